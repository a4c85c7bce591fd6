public class Homeroom {
    AttendanceSheet sheet;
    String teacherName;
    int studentCount;
    int fireDrillsHeld;
    double moraleScore;
    boolean assemblyDay;

    public Homeroom(String teacherName, int studentCount) {
        this.teacherName = teacherName;
        this.studentCount = studentCount;
        this.sheet = new AttendanceSheet();
    }

    public void takeRoll(int present, int tardy) {
        int absent = studentCount - present - tardy;
        for (int i = 0; i < present; i = i + 1) {
            sheet.markPresent();
        }
        for (int i = 0; i < tardy; i = i + 1) {
            sheet.markTardy();
        }
        for (int i = 0; i < absent; i = i + 1) {
            sheet.markAbsent();
        }
    }

    public void closeDay() {
        double rate = sheet.dailyRate();
        moraleScore = moraleScore * 0.9 + rate * 0.1;
        sheet.seal();
        sheet.reset();
    }

    public boolean smoothMorning() {
        if (assemblyDay) {
            return false;
        }
        return sheet.quietDay();
    }

    public String boardNotice() {
        String notice = teacherName + ": " + sheet.sheetLine();
        if (assemblyDay) {
            notice = notice + " [assembly]";
        }
        return notice;
    }

    public void holdFireDrill() {
        fireDrillsHeld = fireDrillsHeld + 1;
        moraleScore = moraleScore - 0.05;
        if (moraleScore < 0.0) {
            moraleScore = 0.0;
        }
    }

    public double monthOutlook() {
        double outlook = moraleScore;
        outlook = outlook + sheet.dailyRate() * 0.2;
        if (fireDrillsHeld > 2) {
            outlook = outlook - 0.1;
        }
        return outlook;
    }

    public boolean drillOverdue() {
        if (assemblyDay) {
            return false;
        }
        return fireDrillsHeld == 0;
    }

    public String morningBanner() {
        String banner = "Room of " + studentCount;
        if (smoothMorning()) {
            banner = banner + " all set";
        } else {
            banner = banner + " needs attention";
        }
        return banner;
    }
}
