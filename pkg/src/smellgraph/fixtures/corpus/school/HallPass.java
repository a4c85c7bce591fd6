public class HallPass {
    int issuedMinute;
    int durationMinutes;

    public boolean expired(int nowMinute) {
        return nowMinute > issuedMinute + durationMinutes;
    }

    public int minutesLeft(int nowMinute) {
        int left = issuedMinute + durationMinutes - nowMinute;
        if (left < 0) {
            left = 0;
        }
        return left;
    }

    public void extend(int extraMinutes) {
        durationMinutes = durationMinutes + extraMinutes;
    }
}
