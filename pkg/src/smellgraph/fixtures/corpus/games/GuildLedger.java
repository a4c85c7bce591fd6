public class GuildLedger {
    PlayerBadge charterBadge;
    int treasuryGold;
    int memberCount;
    int raidsWon;
    double taxRate;
    int upkeepCost;
    int recruitsPending;

    public double standingScore() {
        double score = treasuryGold * 0.001;
        score = score + raidsWon * 2.0;
        score = score + memberCount * 0.5;
        score = score - upkeepCost * 0.01;
        score = score + taxRate * 10.0;
        score = score + recruitsPending * 0.25;
        if (charterBadge.getPrestige() > 50) {
            score = score + 3.0;
        }
        return score;
    }

    public String charterNote(PlayerBadge honoree) {
        int dues = upkeepCost / 12;
        dues = dues + (int) (treasuryGold * taxRate / 100.0);
        if (honoree.isFounder()) {
            dues = 0;
        }
        String note = "dues " + dues;
        note = note + " members " + memberCount;
        note = note + " raids " + raidsWon;
        if (recruitsPending > 3) {
            note = note + " recruiting";
        }
        return note;
    }

    public boolean charterVeteran() {
        if (charterBadge.getSeasonsActive() > 4) {
            return true;
        }
        return charterBadge.getPrestige() > 80;
    }

    public void winRaid(int loot) {
        raidsWon = raidsWon + 1;
        treasuryGold = treasuryGold + loot;
    }

    public void payUpkeep() {
        treasuryGold = treasuryGold - upkeepCost;
        if (treasuryGold < 0) {
            treasuryGold = 0;
        }
    }
}
