public class LabelPress {
    int ribbonAmount;
    int labelsPrinted;
    double inkDensity;
    int feedJams;
    boolean sleepMode;
    String firmwareTag;

    public boolean feedReady() {
        if (sleepMode) {
            return false;
        }
        return ribbonAmount > 0;
    }

    public int stampBatch(int requested) {
        int printable = requested;
        if (printable > ribbonAmount) {
            printable = ribbonAmount;
        }
        ribbonAmount = ribbonAmount - printable;
        labelsPrinted = labelsPrinted + printable;
        return printable;
    }

    public void reloadRibbon(int amount) {
        ribbonAmount = ribbonAmount + amount;
        if (ribbonAmount > 5000) {
            ribbonAmount = 5000;
        }
        sleepMode = false;
    }

    public double inkForecast(int upcoming) {
        double needed = upcoming * inkDensity;
        if (feedJams > 3) {
            needed = needed * 1.2;
        }
        return needed;
    }

    public void recordJam() {
        feedJams = feedJams + 1;
        if (feedJams > 10) {
            sleepMode = true;
        }
    }

    public String pressStatus() {
        String status = firmwareTag + "/" + labelsPrinted;
        if (sleepMode) {
            status = status + "/idle";
        }
        return status;
    }

    public int ribbonDaysLeft(int dailyUse) {
        if (dailyUse <= 0) {
            return 9999;
        }
        int days = ribbonAmount / dailyUse;
        return days;
    }

    public double jamRisk() {
        double risk = feedJams * 0.05;
        if (inkDensity > 0.9) {
            risk = risk + 0.1;
        }
        if (risk > 1.0) {
            risk = 1.0;
        }
        return risk;
    }

    public void wake() {
        sleepMode = false;
        feedJams = 0;
    }
}
