package com.example;

/** Overload playground: area/1 is deliberately ambiguous by arity. */
public class Shapes {

    static int area(int side) {
        return side * side;
    }

    static long area(long side) {
        return side * side;
    }

    static int clamp(int value) {
        return clamp(value, 100); // expect: int com.example.Shapes.clamp(int, int)
    }

    static int clamp(int value, int max) {
        return value > max ? max : value;
    }
}
