public class PalletRack extends BinRack {
    int palletCount;
    int craneMinutes;
    double palletLoad;
    double deckWear;
    int forkliftPasses;
    String bayLabel;
    boolean sprinklerFitted;

    public double deckStress() {
        double stress = palletLoad / (palletCount + 1);
        if (deckWear > 0.5) {
            stress = stress * 1.4;
        }
        if (forkliftPasses > 200) {
            stress = stress * 1.1;
        }
        return stress;
    }

    public int craneBacklog(int requested) {
        int backlog = requested - craneMinutes;
        if (backlog < 0) {
            backlog = 0;
        }
        if (sprinklerFitted) {
            backlog = backlog + 15;
        }
        return backlog;
    }

    public boolean needsInspection() {
        if (deckWear > 0.7) {
            return true;
        }
        return forkliftPasses > 500;
    }

    public void logPass(int minutes) {
        forkliftPasses = forkliftPasses + 1;
        craneMinutes = craneMinutes + minutes;
        deckWear = deckWear + 0.001;
    }

    public String bayReport() {
        String report = bayLabel + ":" + palletCount;
        if (sprinklerFitted) {
            report = report + ":wet";
        }
        return report;
    }

    public int stackingScore(int tiers) {
        int score = tiers * palletCount;
        if (deckWear > 0.3) {
            score = score / 2;
        }
        if (palletLoad > 900.0) {
            score = score - 10;
        }
        return score;
    }

    public double shiftUtilization(double shiftHours) {
        double used = craneMinutes / 60.0;
        double ratio = used / shiftHours;
        if (ratio > 1.0) {
            ratio = 1.0;
        }
        return ratio;
    }
}
