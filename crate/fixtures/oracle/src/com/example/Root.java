package com.example;

/** Root of the worker hierarchy. */
public class Root {

    protected long created;

    long createdAt() {
        return created;
    }

    void touch(long stamp) {
        created = stamp;
    }
}
