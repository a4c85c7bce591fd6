public class AttendanceSheet {
    int presentToday;
    int absentToday;
    int tardyToday;
    int sessionsLogged;
    double tardyWeight;
    boolean sealed;

    public void markPresent() {
        if (!sealed) {
            presentToday = presentToday + 1;
        }
    }

    public void markAbsent() {
        if (!sealed) {
            absentToday = absentToday + 1;
        }
    }

    public void markTardy() {
        if (!sealed) {
            tardyToday = tardyToday + 1;
        }
    }

    public double dailyRate() {
        int total = presentToday + absentToday + tardyToday;
        if (total == 0) {
            return 1.0;
        }
        double effective = presentToday + tardyToday * tardyWeight;
        return effective / total;
    }

    public void seal() {
        sealed = true;
        sessionsLogged = sessionsLogged + 1;
    }

    public void reset() {
        presentToday = 0;
        absentToday = 0;
        tardyToday = 0;
        sealed = false;
    }

    public String sheetLine() {
        String line = presentToday + "p/" + absentToday + "a";
        if (tardyToday > 0) {
            line = line + "/" + tardyToday + "t";
        }
        return line;
    }

    public boolean quietDay() {
        return absentToday == 0 && tardyToday <= 1;
    }

    public int headCount() {
        return presentToday + tardyToday;
    }

    public boolean worthEscalating() {
        if (sessionsLogged < 3) {
            return false;
        }
        return dailyRate() < 0.6;
    }

    public String termLabel() {
        String label = sessionsLogged + " sessions";
        if (sealed) {
            label = label + " (sealed)";
        }
        return label;
    }
}
