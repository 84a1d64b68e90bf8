package com.example;

import static com.example.util.Strings.repeat;
import static java.lang.Double.isNaN;
import static java.lang.Math.max;

import com.example.util.Strings;
import java.math.BigInteger;
import java.util.List;

/**
 * Exercises every resolution path the project index supports. Each annotated
 * line states the expected outcome for the single call on that line.
 */
public class Worker extends Base {

    private String name;
    private List items;
    private Strings helper;
    private Logger logVia;

    int run(int a, int b) {
        double hi = max(a, b); // expect: double java.lang.Math.max(double, double)
        double ratio = hi / 2.0;
        if (isNaN(ratio)) { // expect: boolean java.lang.Double.isNaN(double)
            return increment(5); // expect: int com.example.Base.increment(int)
        }
        String banner = repeat(name, 2); // expect: java.lang.String com.example.util.Strings.repeat(java.lang.String, int)
        return banner.length(); // expect: int java.lang.String.length()
    }

    int bookkeeping() {
        this.increment(2); // expect: int com.example.Base.increment(int)
        super.log("rollover"); // expect: void com.example.Base.log(java.lang.String)
        touch(99L); // expect: void com.example.Root.touch(long)
        long stamp = createdAt(); // expect: long com.example.Root.createdAt()
        return twice((int) stamp); // expect: int com.example.Worker.twice(int)
    }

    int inspect(String s) {
        if (name.isEmpty()) { // expect: boolean java.lang.String.isEmpty()
            return 0;
        }
        int total = items.size(); // expect: int java.util.List.size()
        items.remove(0); // expect: AMBIGUOUS boolean java.util.List.remove(java.lang.Object) | java.lang.Object java.util.List.remove(int)
        BigInteger big = BigInteger.valueOf(total); // expect: java.math.BigInteger java.math.BigInteger.valueOf(long)
        int width = big.bitLength(); // expect: int java.math.BigInteger.bitLength()
        return width + s.length(); // expect: int java.lang.String.length()
    }

    double numbers(double delta, String text, String flag) {
        double span = Math.abs(delta); // expect: double java.lang.Math.abs(double)
        Integer parsed = Integer.valueOf(7); // expect: java.lang.Integer java.lang.Integer.valueOf(int)
        boolean enabled = Boolean.parseBoolean(flag); // expect: boolean java.lang.Boolean.parseBoolean(java.lang.String)
        if (enabled) {
            return span + parsed.intValue(); // expect: int java.lang.Integer.intValue()
        }
        return span;
    }

    String formatting() {
        String banner = Strings.repeat("=", 8); // expect: java.lang.String com.example.util.Strings.repeat(java.lang.String, int)
        String padded = helper.pad(name, 8); // expect: java.lang.String com.example.util.Strings.pad(java.lang.String, int)
        String trimmed = name.trim(); // expect: java.lang.String java.lang.String.trim()
        return banner + padded + trimmed;
    }

    int geometry() {
        Shapes.area(4); // expect: AMBIGUOUS int com.example.Shapes.area(int) | long com.example.Shapes.area(long)
        Shapes.clamp(9); // expect: int com.example.Shapes.clamp(int)
        return Shapes.clamp(9, 20); // expect: int com.example.Shapes.clamp(int, int)
    }

    int locals() {
        scale(7); // expect: AMBIGUOUS int com.example.Worker.scale(int) | long com.example.Worker.scale(long)
        String name = "shadowed";
        return name.length(); // expect: int java.lang.String.length()
    }

    void externals(Object path) {
        logVia.warn("boom"); // expect: UNRESOLVED warn/1
        System.out.println(path); // expect: UNRESOLVED println/1
        Files.readString(path); // expect: UNRESOLVED readString/1
        someUnknown(); // expect: UNRESOLVED someUnknown/0
        helper.pad(name, 8).length(); // expect: java.lang.String com.example.util.Strings.pad(java.lang.String, int) ;; UNRESOLVED length/0
    }

    private int twice(int v) {
        return v + v;
    }

    private int scale(int v) {
        return v * 2;
    }

    private long scale(long v) {
        return v * 2L;
    }
}
