public class FadeCurve {
    int durationMillis;
    double floorLevel;

    public double levelAt(int elapsed) {
        if (elapsed >= durationMillis) {
            return floorLevel;
        }
        double remaining = 1.0 - (double) elapsed / durationMillis;
        double level = floorLevel + remaining * (1.0 - floorLevel);
        return level;
    }

    public boolean finished(int elapsed) {
        return elapsed >= durationMillis;
    }

    public int halfwayPoint() {
        return durationMillis / 2;
    }
}
