public class PlayerBadge {
    int prestige;
    int seasonsActive;
    boolean founder;

    public int getPrestige() {
        return prestige;
    }

    public int getSeasonsActive() {
        return seasonsActive;
    }

    public boolean isFounder() {
        return founder;
    }

    public String badgeLine() {
        return "prestige " + prestige + " seasons " + seasonsActive;
    }
}
