public class Listener {
    String handle;
    int minutesThisWeek;
    boolean premium;

    public int getMinutesThisWeek() {
        return minutesThisWeek;
    }

    public boolean isPremium() {
        return premium;
    }

    public String profileLine() {
        return handle + " (" + minutesThisWeek + "m)";
    }
}
