public class AccountBase {
    double balance;
    double holdAmount;
    double overdraftCap;
    double interestRate;
    int openedDay;
    String branchTag;

    public double available() {
        double free = balance - holdAmount;
        if (free < -overdraftCap) {
            free = -overdraftCap;
        }
        return free;
    }

    public void accrueDaily() {
        double gain = balance * interestRate / 365.0;
        if (gain > 0.0) {
            balance = balance + gain;
        }
    }

    public boolean canWithdraw(double amount) {
        if (amount <= 0.0) {
            return false;
        }
        return available() >= amount;
    }

    public void applyHold(double amount) {
        holdAmount = holdAmount + amount;
        if (holdAmount > balance + overdraftCap) {
            holdAmount = balance + overdraftCap;
        }
    }

    public void releaseHold(double amount) {
        holdAmount = holdAmount - amount;
        if (holdAmount < 0.0) {
            holdAmount = 0.0;
        }
    }

    public String describeAccount() {
        String text = branchTag + "#" + openedDay;
        if (balance < 0.0) {
            text = text + " (overdrawn)";
        }
        return text;
    }

    public double feeBasis() {
        double basis = balance;
        if (basis < 0.0) {
            basis = -basis * 2.0;
        }
        return basis;
    }

    public int ageDays(int today) {
        int age = today - openedDay;
        if (age < 0) {
            age = 0;
        }
        return age;
    }

    public double holdRatio() {
        if (balance <= 0.0) {
            return 1.0;
        }
        return holdAmount / balance;
    }

    public boolean dormantCandidate(int today) {
        if (ageDays(today) < 365) {
            return false;
        }
        return balance < 10.0 && holdAmount == 0.0;
    }

    public double projectedYearGain() {
        double gain = balance * interestRate;
        if (gain < 0.0) {
            gain = 0.0;
        }
        return gain;
    }
}
