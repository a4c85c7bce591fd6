public class MatchScorer {
    int pointCap;
    double handicap;
    int roundsPlayed;
    boolean rankedMode;

    public void tallyMatch(int[] roundScores, int[] multipliers, int matchId) {
        int raw = 0;
        for (int i = 0; i < roundScores.length; i = i + 1) {
            raw = raw + roundScores[i];
        }
        int bonus = comboBonus(roundScores, multipliers);
        int total = raw + bonus;
        if (total > pointCap) {
            total = pointCap;
        }
        double adjusted = total - handicap;
        if (adjusted < 0.0) {
            adjusted = 0.0;
        }
        printRoundTable(roundScores, matchId);
        System.out.println("bonus " + bonus);
        System.out.println("final " + adjusted);
        roundsPlayed = roundsPlayed + roundScores.length;
        if (rankedMode && adjusted > pointCap * 0.8) {
            System.out.println("rank up candidate");
        }
        if (roundsPlayed > 500) {
            roundsPlayed = 500;
        }
    }

    public void printRoundTable(int[] scores, int matchId) {
        System.out.println("match " + matchId);
        int best = 0;
        int worst = 9999;
        for (int i = 0; i < scores.length; i = i + 1) {
            System.out.println("round " + i + ": " + scores[i]);
            if (scores[i] > best) {
                best = scores[i];
            }
            if (scores[i] < worst) {
                worst = scores[i];
            }
        }
        System.out.println("best " + best);
        System.out.println("worst " + worst);
    }

    public int comboBonus(int[] roundScores, int[] multipliers) {
        int bonus = 0;
        int chain = 0;
        for (int i = 0; i < roundScores.length; i = i + 1) {
            if (roundScores[i] > 50) {
                chain = chain + 1;
            } else {
                chain = 0;
            }
            int mult = 1;
            if (i < multipliers.length) {
                mult = multipliers[i];
            }
            bonus = bonus + chain * mult;
        }
        return bonus;
    }

    public void reviewStreaks(int[] losses, int tolerance, int base) {
        int morale = base - streakPenalty(losses, tolerance) * 2;
        if (morale < 0) {
            morale = 0;
        }
        int coaching = 0;
        if (morale < 40) {
            coaching = (40 - morale) / 4;
        }
        if (rankedMode && coaching > 5) {
            coaching = 5;
        }
        int outlook = morale + coaching * 3;
        System.out.println("morale " + outlook);
        if (outlook < 30) {
            handicap = handicap - 1.0;
        }
        if (handicap < 0.0) {
            handicap = 0.0;
        }
        if (outlook > 90) {
            System.out.println("team peaking");
        }
    }

    public int streakPenalty(int[] losses, int tolerance) {
        int penalty = 0;
        int run = 0;
        for (int i = 0; i < losses.length; i = i + 1) {
            if (losses[i] > 0) {
                run = run + 1;
            } else {
                run = 0;
            }
            if (run > tolerance) {
                penalty = penalty + run - tolerance;
            }
        }
        if (penalty > 30) {
            penalty = 30;
        }
        return penalty;
    }

    public boolean seasonOver(int week) {
        return week > 12 || roundsPlayed >= 500;
    }
}
