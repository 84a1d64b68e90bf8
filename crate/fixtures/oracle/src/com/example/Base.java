package com.example;

/** Mid-tier parent providing the counter bookkeeping. */
public class Base extends Root {

    protected int counter;

    int increment(int by) {
        counter = counter + by;
        return counter;
    }

    void log(String message) {
        // fixture sink, intentionally empty
    }
}
