public class BoardSession {
    DiceCup cup;
    int turnNumber;
    int activePlayers;
    int potChips;
    double tension;
    boolean suddenDeath;

    public BoardSession(int activePlayers) {
        this.activePlayers = activePlayers;
        this.cup = new DiceCup();
    }

    public int playTurn(int seedValue, int wager) {
        int rolled = cup.roll(seedValue);
        turnNumber = turnNumber + 1;
        potChips = potChips + wager;
        if (rolled >= 10) {
            tension = tension + 0.2;
        }
        if (cup.hotStreak()) {
            tension = tension + 0.1;
        }
        return rolled;
    }

    public String tableAnnouncement() {
        String text = "turn " + turnNumber + " " + cup.cupStatus();
        if (suddenDeath) {
            text = text + " SUDDEN DEATH";
        }
        return text;
    }

    public boolean tensionHigh() {
        double limit = 1.0;
        if (suddenDeath) {
            limit = 0.6;
        }
        return tension > limit;
    }

    public void eliminatePlayer() {
        activePlayers = activePlayers - 1;
        if (activePlayers <= 2) {
            suddenDeath = true;
        }
    }

    public int splitPot() {
        if (activePlayers == 0) {
            return 0;
        }
        int share = potChips / activePlayers;
        potChips = potChips - share * activePlayers;
        return share;
    }

    public void freshRound() {
        cup.emptyCup();
        tension = 0.0;
        turnNumber = 0;
    }

    public boolean luckySession() {
        if (cup.doublesRate() > 25) {
            return true;
        }
        return cup.averagePips() > 8.0;
    }

    public double excitementScore() {
        double score = tension * 10.0 + potChips * 0.01;
        if (suddenDeath) {
            score = score + 5.0;
        }
        return score;
    }
}
