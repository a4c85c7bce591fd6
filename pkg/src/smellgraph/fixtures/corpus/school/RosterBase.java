public class RosterBase {
    int seatCount;
    int enrolled;
    int waitlisted;
    double attendanceRate;
    String roomCode;
    boolean labSection;

    public int seatsRemaining() {
        int open = seatCount - enrolled;
        if (open < 0) {
            open = 0;
        }
        return open;
    }

    public boolean canEnroll() {
        if (seatsRemaining() > 0) {
            return true;
        }
        return waitlisted < 5;
    }

    public void admitFromWaitlist() {
        if (waitlisted > 0 && seatsRemaining() > 0) {
            waitlisted = waitlisted - 1;
            enrolled = enrolled + 1;
        }
    }

    public double expectedPresent() {
        double expected = enrolled * attendanceRate;
        if (labSection) {
            expected = expected * 0.95;
        }
        return expected;
    }

    public String roomSummary() {
        String text = roomCode + " " + enrolled + "/" + seatCount;
        if (waitlisted > 0) {
            text = text + " (+" + waitlisted + ")";
        }
        return text;
    }

    public void recordSession(int present) {
        double rate = (double) present / enrolled;
        attendanceRate = attendanceRate * 0.8 + rate * 0.2;
        if (attendanceRate > 1.0) {
            attendanceRate = 1.0;
        }
    }

    public int crowdingIndex() {
        int crowding = enrolled * 100 / seatCount;
        if (labSection) {
            crowding = crowding + 10;
        }
        return crowding;
    }

    public boolean needsBiggerRoom() {
        return crowdingIndex() > 110;
    }

    public int waitlistPressure() {
        int pressure = waitlisted * 10;
        if (labSection) {
            pressure = pressure + 5;
        }
        return pressure;
    }
}
