/*
 * Licensed to the Apache Software Foundation (ASF) under one or more
 * contributor license agreements.  See the NOTICE file distributed with
 * this work for additional information regarding copyright ownership.
 * The ASF licenses this file to You under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance with
 * the License.  You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
package org.apache.commons.lang3;

/**
 * Operations on boolean primitives and Boolean objects.
 *
 * <p>This class tries to handle {@code null} input gracefully.
 * An exception will not be thrown for a {@code null} input.
 * Each method documents its behavior in more detail.</p>
 *
 * <p>#ThreadSafe#</p>
 *
 * @since 2.0
 */
public class BooleanUtils {

    /**
     * BooleanUtils instances should NOT be constructed in standard programming.
     * Instead, the class should be used as {@code BooleanUtils.negate(true);}.
     *
     * <p>This constructor is public to permit tools that require a JavaBean instance
     * to operate.</p>
     */
    public BooleanUtils() {
        super();
    }

    /**
     * Negates the specified boolean.
     *
     * <p>If {@code null} is passed in, {@code null} will be returned.</p>
     *
     * <pre>
     *   BooleanUtils.negate(Boolean.TRUE)  = Boolean.FALSE;
     *   BooleanUtils.negate(Boolean.FALSE) = Boolean.TRUE;
     *   BooleanUtils.negate(null)          = null;
     * </pre>
     *
     * @param bool the Boolean to negate, may be null
     * @return the negated Boolean, or {@code null} if {@code null} input
     */
    public static Boolean negate(Boolean bool) {
        if (bool == null) {
            return null;
        }
        return bool.booleanValue() ? Boolean.FALSE : Boolean.TRUE;
    }

    /**
     * Checks if a {@code Boolean} value is {@code true},
     * handling {@code null} by returning {@code false}.
     *
     * @param bool the boolean to check, null returns {@code false}
     * @return {@code true} only if the input is nonnull and true
     */
    public static boolean isTrue(Boolean bool) {
        return Boolean.TRUE.equals(bool);
    }

    /**
     * Checks if a {@code Boolean} value is <i>not</i> {@code true},
     * handling {@code null} by returning {@code true}.
     *
     * @param bool the boolean to check, null returns {@code true}
     * @return {@code true} if the input is null or false
     */
    public static boolean isNotTrue(Boolean bool) {
        return !isTrue(bool);
    }

    /**
     * Checks if a {@code Boolean} value is {@code false},
     * handling {@code null} by returning {@code false}.
     *
     * @param bool the boolean to check, null returns {@code false}
     * @return {@code true} only if the input is nonnull and false
     */
    public static boolean isFalse(Boolean bool) {
        return Boolean.FALSE.equals(bool);
    }

    /**
     * Checks if a {@code Boolean} value is <i>not</i> {@code false},
     * handling {@code null} by returning {@code true}.
     *
     * @param bool the boolean to check, null returns {@code true}
     * @return {@code true} if the input is null or true
     */
    public static boolean isNotFalse(Boolean bool) {
        return !isFalse(bool);
    }

    /**
     * Converts a Boolean to a boolean handling {@code null}
     * by returning {@code false}.
     *
     * @param bool the boolean to convert
     * @return {@code true} or {@code false}, {@code null} returns {@code false}
     */
    public static boolean toBoolean(Boolean bool) {
        return bool != null && bool.booleanValue();
    }

    /**
     * Converts a Boolean to a boolean handling {@code null}.
     *
     * @param bool the boolean object to convert to primitive
     * @param valueIfNull the boolean value to return if the parameter {@code bool} is {@code null}
     * @return {@code true} or {@code false}
     */
    public static boolean toBooleanDefaultIfNull(Boolean bool, boolean valueIfNull) {
        if (bool == null) {
            return valueIfNull;
        }
        return bool.booleanValue();
    }

    /**
     * Converts an int to a boolean using the convention that {@code zero}
     * is {@code false}, everything else is {@code true}.
     *
     * @param value the int to convert
     * @return {@code true} if non-zero, {@code false} if zero
     */
    public static boolean toBoolean(int value) {
        return value != 0;
    }

    /**
     * Converts an int to a Boolean using the convention that {@code zero}
     * is {@code false}, everything else is {@code true}.
     *
     * @param value the int to convert
     * @return Boolean.TRUE if non-zero, Boolean.FALSE if zero
     */
    public static Boolean toBooleanObject(int value) {
        return value == 0 ? Boolean.FALSE : Boolean.TRUE;
    }

    /**
     * Converts an Integer to a Boolean using the convention that {@code zero}
     * is {@code false}, every other numeric value is {@code true}.
     *
     * <p>{@code null} will be converted to {@code null}.</p>
     *
     * @param value the Integer to convert
     * @return Boolean.TRUE if non-zero, Boolean.FALSE if zero, {@code null} if {@code null} input
     */
    public static Boolean toBooleanObject(Integer value) {
        if (value == null) {
            return null;
        }
        return value.intValue() == 0 ? Boolean.FALSE : Boolean.TRUE;
    }

    /**
     * Converts an int to a boolean specifying the conversion values.
     *
     * @param value the Integer to convert
     * @param trueValue the value to match for {@code true}
     * @param falseValue the value to match for {@code false}
     * @return {@code true} or {@code false}
     * @throws IllegalArgumentException if no match
     */
    public static boolean toBoolean(int value, int trueValue, int falseValue) {
        if (value == trueValue) {
            return true;
        }
        if (value == falseValue) {
            return false;
        }
        throw new IllegalArgumentException("The Integer did not match either specified value");
    }

    /**
     * Converts an int to a Boolean specifying the conversion values.
     *
     * @param value the Integer to convert
     * @param trueValue the value to match for {@code true}
     * @param falseValue the value to match for {@code false}
     * @param nullValue the value to match for {@code null}
     * @return Boolean.TRUE, Boolean.FALSE, or {@code null}
     * @throws IllegalArgumentException if no match
     */
    public static Boolean toBooleanObject(int value, int trueValue, int falseValue, int nullValue) {
        if (value == trueValue) {
            return Boolean.TRUE;
        }
        if (value == falseValue) {
            return Boolean.FALSE;
        }
        if (value == nullValue) {
            return null;
        }
        throw new IllegalArgumentException("The Integer did not match any specified value");
    }

    /**
     * Converts a String to a boolean (optimised for performance).
     *
     * <p>{@code 'true'}, {@code 'on'}, {@code 'y'}, {@code 't'} or {@code 'yes'}
     * (case insensitive) will return {@code true}. Otherwise, {@code false} is returned.</p>
     *
     * @param str the String to check
     * @return the boolean value of the string, {@code false} if no match or the String is null
     */
    public static boolean toBoolean(String str) {
        return toBooleanObject(str) == Boolean.TRUE;
    }

    /**
     * Converts a String to a Boolean.
     *
     * <p>{@code 'true'}, {@code 'on'}, {@code 'y'}, {@code 't'} or {@code 'yes'}
     * (case insensitive) will return {@code true}.
     * {@code 'false'}, {@code 'off'}, {@code 'n'}, {@code 'f'} or {@code 'no'}
     * (case insensitive) will return {@code false}.
     * Otherwise, {@code null} is returned.</p>
     *
     * @param str the String to check; upper and lower case are treated as the same
     * @return the Boolean value of the string, {@code null} if no match or {@code null} input
     */
    public static Boolean toBooleanObject(String str) {
        if (str == null) {
            return null;
        }
        if (str.equalsIgnoreCase("true") || str.equalsIgnoreCase("yes") || str.equalsIgnoreCase("on")) {
            return Boolean.TRUE;
        }
        if (str.equalsIgnoreCase("false") || str.equalsIgnoreCase("no") || str.equalsIgnoreCase("off")) {
            return Boolean.FALSE;
        }
        return null;
    }

    /**
     * Converts a String to a Boolean throwing an exception if no match found.
     *
     * @param str the String to check
     * @param trueString the String to match for {@code true} (case sensitive), may be {@code null}
     * @param falseString the String to match for {@code false} (case sensitive), may be {@code null}
     * @return the boolean value of the string
     * @throws IllegalArgumentException if the String doesn't match
     */
    public static boolean toBoolean(String str, String trueString, String falseString) {
        if (str == trueString) {
            return true;
        }
        if (str == falseString) {
            return false;
        }
        if (str != null) {
            if (str.equals(trueString)) {
                return true;
            }
            if (str.equals(falseString)) {
                return false;
            }
        }
        throw new IllegalArgumentException("The String did not match either specified value");
    }

    /**
     * Converts a String to a Boolean throwing an exception if no match.
     *
     * @param str the String to check
     * @param trueString the String to match for {@code true} (case sensitive)
     * @param falseString the String to match for {@code false} (case sensitive)
     * @param nullString the String to match for {@code null} (case sensitive)
     * @return the Boolean value of the string, or {@code null}
     * @throws IllegalArgumentException if the String doesn't match
     */
    public static Boolean toBooleanObject(String str, String trueString, String falseString, String nullString) {
        if (str == null) {
            if (trueString == null) {
                return Boolean.TRUE;
            }
            if (falseString == null) {
                return Boolean.FALSE;
            }
            if (nullString == null) {
                return null;
            }
        } else if (str.equals(trueString)) {
            return Boolean.TRUE;
        } else if (str.equals(falseString)) {
            return Boolean.FALSE;
        } else if (str.equals(nullString)) {
            return null;
        }
        throw new IllegalArgumentException("The String did not match any specified value");
    }

    /**
     * Converts a boolean to an int using the convention that
     * {@code true} is {@code 1} and {@code false} is {@code 0}.
     *
     * @param bool the boolean to convert
     * @return one if {@code true}, zero if {@code false}
     */
    public static int toInteger(boolean bool) {
        return bool ? 1 : 0;
    }

    /**
     * Converts a boolean to an Integer using the convention that
     * {@code true} is {@code 1} and {@code false} is {@code 0}.
     *
     * @param bool the boolean to convert
     * @return one if {@code true}, zero if {@code false}
     */
    public static Integer toIntegerObject(boolean bool) {
        return bool ? Integer.valueOf(1) : Integer.valueOf(0);
    }

    /**
     * Converts a boolean to an int specifying the conversion values.
     *
     * @param bool the value to convert
     * @param trueValue the value to return if {@code true}
     * @param falseValue the value to return if {@code false}
     * @return the appropriate value
     */
    public static int toInteger(boolean bool, int trueValue, int falseValue) {
        return bool ? trueValue : falseValue;
    }

    /**
     * Converts a Boolean to an Integer using the convention that
     * {@code zero} is {@code false}.
     *
     * <p>{@code null} will be converted to {@code null}.</p>
     *
     * @param bool the Boolean to convert
     * @return one if Boolean.TRUE, zero if Boolean.FALSE, {@code null} if {@code null}
     */
    public static Integer toIntegerObject(Boolean bool) {
        if (bool == null) {
            return null;
        }
        return toIntegerObject(bool.booleanValue());
    }

    /**
     * Converts a boolean to a String returning {@code 'true'} or {@code 'false'}.
     *
     * @param bool the Boolean to check
     * @return {@code 'true'}, {@code 'false'}
     */
    public static String toStringTrueFalse(boolean bool) {
        return toString(bool, "true", "false");
    }

    /**
     * Converts a boolean to a String returning {@code 'on'} or {@code 'off'}.
     *
     * @param bool the Boolean to check
     * @return {@code 'on'}, {@code 'off'}
     */
    public static String toStringOnOff(boolean bool) {
        return toString(bool, "on", "off");
    }

    /**
     * Converts a boolean to a String returning {@code 'yes'} or {@code 'no'}.
     *
     * @param bool the Boolean to check
     * @return {@code 'yes'}, {@code 'no'}
     */
    public static String toStringYesNo(boolean bool) {
        return toString(bool, "yes", "no");
    }

    /**
     * Converts a boolean to a String returning one of the input Strings.
     *
     * @param bool the Boolean to check
     * @param trueString the String to return if {@code true}, may be {@code null}
     * @param falseString the String to return if {@code false}, may be {@code null}
     * @return one of the two input Strings
     */
    public static String toString(boolean bool, String trueString, String falseString) {
        return bool ? trueString : falseString;
    }

    /**
     * Converts a Boolean to a String returning {@code 'true'},
     * {@code 'false'}, or {@code null}.
     *
     * @param bool the Boolean to check
     * @return {@code 'true'}, {@code 'false'}, or {@code null}
     */
    public static String toStringTrueFalse(Boolean bool) {
        if (bool == null) {
            return null;
        }
        return bool.booleanValue() ? "true" : "false";
    }

    /**
     * Performs an 'and' operation on a set of booleans.
     *
     * <pre>
     *   BooleanUtils.and(true, true)         = true
     *   BooleanUtils.and(false, false)       = false
     *   BooleanUtils.and(true, false)        = false
     *   BooleanUtils.and(true, true, false)  = false
     *   BooleanUtils.and(true, true, true)   = true
     * </pre>
     *
     * @param array an array of {@code boolean}s
     * @return the result of the logical 'and' operation
     * @throws IllegalArgumentException if {@code array} is empty
     */
    public static boolean and(boolean... array) {
        if (array.length == 0) {
            throw new IllegalArgumentException("Array is empty");
        }
        for (boolean element : array) {
            if (!element) {
                return false;
            }
        }
        return true;
    }

    /**
     * Performs an 'or' operation on a set of booleans.
     *
     * <pre>
     *   BooleanUtils.or(true, true)          = true
     *   BooleanUtils.or(false, false)        = false
     *   BooleanUtils.or(true, false)         = true
     * </pre>
     *
     * @param array an array of {@code boolean}s
     * @return the result of the logical 'or' operation
     * @throws IllegalArgumentException if {@code array} is empty
     */
    public static boolean or(boolean... array) {
        if (array.length == 0) {
            throw new IllegalArgumentException("Array is empty");
        }
        for (boolean element : array) {
            if (element) {
                return true;
            }
        }
        return false;
    }

    /**
     * Performs an xor on a set of booleans.
     *
     * <pre>
     *   BooleanUtils.xor(true, true)   = false
     *   BooleanUtils.xor(false, false) = false
     *   BooleanUtils.xor(true, false)  = true
     * </pre>
     *
     * @param array an array of {@code boolean}s
     * @return the result of the xor operations
     * @throws IllegalArgumentException if {@code array} is empty
     */
    public static boolean xor(boolean... array) {
        if (array.length == 0) {
            throw new IllegalArgumentException("Array is empty");
        }
        boolean result = false;
        for (boolean element : array) {
            result ^= element;
        }
        return result;
    }

    /**
     * Compares two {@code boolean} values.
     *
     * @param x the first {@code boolean} to compare
     * @param y the second {@code boolean} to compare
     * @return the value {@code 0} if {@code x == y};
     *         a value less than {@code 0} if {@code !x && y}; and
     *         a value greater than {@code 0} if {@code x && !y}
     */
    public static int compare(boolean x, boolean y) {
        if (x == y) {
            return 0;
        }
        return x ? 1 : -1;
    }
}
