public class DiceCup {
    int lastRoll;
    int rollCount;
    int pipsTotal;
    int doublesSeen;
    int dieSides;
    boolean loadedDie;

    public int roll(int seedValue) {
        int a = (seedValue * 31 + rollCount * 7) % dieSides + 1;
        int b = (seedValue * 17 + rollCount * 13) % dieSides + 1;
        if (loadedDie && a < dieSides) {
            a = a + 1;
        }
        lastRoll = a + b;
        rollCount = rollCount + 1;
        pipsTotal = pipsTotal + lastRoll;
        if (a == b) {
            doublesSeen = doublesSeen + 1;
        }
        return lastRoll;
    }

    public double averagePips() {
        if (rollCount == 0) {
            return 0.0;
        }
        return (double) pipsTotal / rollCount;
    }

    public boolean hotStreak() {
        return averagePips() > dieSides + 1;
    }

    public String cupStatus() {
        String status = rollCount + " rolls avg " + averagePips();
        if (doublesSeen > 0) {
            status = status + " dbl " + doublesSeen;
        }
        return status;
    }

    public void emptyCup() {
        lastRoll = 0;
        rollCount = 0;
        pipsTotal = 0;
        doublesSeen = 0;
    }

    public int doublesRate() {
        if (rollCount == 0) {
            return 0;
        }
        return doublesSeen * 100 / rollCount;
    }

    public int maxPossible() {
        int top = dieSides * 2;
        if (loadedDie) {
            top = top + 1;
        }
        return top;
    }

    public boolean suspicious() {
        if (rollCount < 10) {
            return false;
        }
        return doublesRate() > 40;
    }

    public String fairnessLabel() {
        if (suspicious()) {
            return "inspect dice";
        }
        return "fair play";
    }
}
