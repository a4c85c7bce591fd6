public class SavingsAccount extends AccountBase {
    double bonusRate;
    int withdrawalsThisMonth;
    int monthlyQuota;
    double goalAmount;
    String goalNote;
    boolean autoSweep;

    public double bonusAccrual(int days) {
        double gain = goalAmount * bonusRate * days / 365.0;
        if (withdrawalsThisMonth > monthlyQuota) {
            gain = 0.0;
        }
        return gain;
    }

    public boolean withdrawalAllowed() {
        if (withdrawalsThisMonth >= monthlyQuota) {
            return false;
        }
        return !autoSweep;
    }

    public void noteWithdrawal() {
        withdrawalsThisMonth = withdrawalsThisMonth + 1;
        if (withdrawalsThisMonth > monthlyQuota) {
            bonusRate = bonusRate * 0.5;
        }
    }

    public void resetMonth() {
        withdrawalsThisMonth = 0;
        if (bonusRate < 0.01) {
            bonusRate = 0.01;
        }
    }

    public double goalProgress(double saved) {
        if (goalAmount <= 0.0) {
            return 1.0;
        }
        double progress = saved / goalAmount;
        if (progress > 1.0) {
            progress = 1.0;
        }
        return progress;
    }

    public String goalBanner(double saved) {
        double pct = goalProgress(saved) * 100.0;
        String banner = goalNote + ": " + (int) pct + "%";
        if (autoSweep) {
            banner = banner + " [sweep]";
        }
        return banner;
    }

    public int quotaHeadroom() {
        int room = monthlyQuota - withdrawalsThisMonth;
        if (room < 0) {
            room = 0;
        }
        return room;
    }
}
