/**
 * A minimal employee record used by the directory service.
 *
 * <p>Employees are identified by a numeric badge number. The email address
 * may be unknown for newly onboarded employees; callers should use
 * {@link #getEmail()} which substitutes a generated placeholder address.</p>
 */
public class Employee {

    private Integer number;
    private String email;

    public Employee(Integer number, String email) {
        this.number = number;
        this.email = email;
    }

    String getEmail() {
        return isEmailUnknown() ? getUnknownEmail(number) : email;
    }

    boolean isEmailUnknown() {
        return email == null || email.isEmpty();
    }

    String getUnknownEmail(Integer number) {
        return "unknown-" + number + "@directory.invalid";
    }
}
