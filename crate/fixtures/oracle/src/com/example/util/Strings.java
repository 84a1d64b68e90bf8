package com.example.util;

/** Small string helpers shared by the fixture project. */
public class Strings {

    public static String repeat(String part, int times) {
        StringBuilder out = new StringBuilder();
        for (int i = 0; i < times; i++) {
            out.append(part); // expect: java.lang.StringBuilder java.lang.StringBuilder.append(java.lang.Object)
        }
        return out.toString(); // expect: java.lang.String java.lang.StringBuilder.toString()
    }

    public String pad(String text, int width) {
        int missing = width - text.length(); // expect: int java.lang.String.length()
        if (missing <= 0) {
            return text;
        }
        return text + repeat(" ", missing); // expect: java.lang.String com.example.util.Strings.repeat(java.lang.String, int)
    }
}
