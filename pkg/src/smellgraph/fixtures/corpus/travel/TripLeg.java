public class TripLeg {
    int distanceKm;
    int departMinute;
    int arriveMinute;
    double fareBase;
    String originCode;
    boolean overnight;

    public int durationMinutes() {
        int span = arriveMinute - departMinute;
        if (span < 0) {
            span = span + 1440;
        }
        return span;
    }

    public double averageSpeed() {
        int minutes = durationMinutes();
        if (minutes == 0) {
            return 0.0;
        }
        return distanceKm * 60.0 / minutes;
    }

    public double fareEstimate() {
        double fare = fareBase + distanceKm * 0.12;
        if (overnight) {
            fare = fare + 25.0;
        }
        return fare;
    }

    public boolean departsEarly() {
        if (overnight) {
            return false;
        }
        return departMinute < 360;
    }

    public String legLabel() {
        String label = originCode + " " + distanceKm + "km";
        if (overnight) {
            label = label + " overnight";
        }
        return label;
    }

    public void shiftDeparture(int minutes) {
        departMinute = departMinute + minutes;
        arriveMinute = arriveMinute + minutes;
        if (departMinute >= 1440) {
            departMinute = departMinute - 1440;
        }
        if (arriveMinute >= 1440) {
            arriveMinute = arriveMinute - 1440;
        }
    }

    public boolean longHaul() {
        return distanceKm > 800 || durationMinutes() > 420;
    }

    public double paceScore() {
        double pace = averageSpeed() / 100.0;
        if (longHaul()) {
            pace = pace * 0.9;
        }
        return pace;
    }

    public int bufferMinutes() {
        int buffer = durationMinutes() / 10;
        if (buffer < 15) {
            buffer = 15;
        }
        return buffer;
    }
}
