public class HonorsRoster extends RosterBase {
    double minGpa;
    int scholarshipSlots;
    int scholarshipsGranted;
    String advisorName;
    boolean thesisRequired;

    public boolean qualifies(double gpa) {
        if (gpa < minGpa) {
            return false;
        }
        if (thesisRequired && gpa < minGpa + 0.3) {
            return false;
        }
        return canEnroll();
    }

    public boolean grantScholarship() {
        if (scholarshipsGranted >= scholarshipSlots) {
            return false;
        }
        scholarshipsGranted = scholarshipsGranted + 1;
        return true;
    }

    public int scholarshipsLeft() {
        int left = scholarshipSlots - scholarshipsGranted;
        if (left < 0) {
            left = 0;
        }
        return left;
    }

    public String advisorLine() {
        String line = "Advisor: " + advisorName;
        if (thesisRequired) {
            line = line + " (thesis)";
        }
        return line;
    }

    public double effectiveCutoff() {
        double cutoff = minGpa;
        if (crowdingIndex() > 100) {
            cutoff = cutoff + 0.2;
        }
        if (thesisRequired) {
            cutoff = cutoff + 0.1;
        }
        return cutoff;
    }

    public String honorsSummary() {
        String text = roomSummary() + " honors";
        text = text + " cutoff=" + effectiveCutoff();
        if (scholarshipsLeft() > 0) {
            text = text + " aid=" + scholarshipsLeft();
        }
        return text;
    }

    public void raiseBar() {
        minGpa = minGpa + 0.1;
        if (minGpa > 4.0) {
            minGpa = 4.0;
        }
        recordSession(enrolled);
    }

    public boolean advisorOverloaded() {
        double load = expectedPresent();
        if (thesisRequired) {
            load = load * 1.5;
        }
        return load > seatCount * 0.9;
    }
}
