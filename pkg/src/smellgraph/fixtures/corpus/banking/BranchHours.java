public class BranchHours {
    int openHour;
    int closeHour;

    public boolean isOpen(int hour) {
        if (hour < openHour) {
            return false;
        }
        return hour < closeHour;
    }

    public int hoursRemaining(int hour) {
        int left = closeHour - hour;
        if (left < 0) {
            left = 0;
        }
        return left;
    }

    public int dailySpan() {
        return closeHour - openHour;
    }
}
