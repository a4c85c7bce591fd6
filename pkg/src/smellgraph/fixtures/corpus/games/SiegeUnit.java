public class SiegeUnit extends UnitBase {
    int ammoCarts;
    int wallDamage;
    int crewSize;
    boolean entrenched;
    double reloadTime;

    public boolean canBombard() {
        if (ammoCarts <= 0) {
            return false;
        }
        return alive() && crewSize >= 3;
    }

    public int bombardDamage() {
        int damage = wallDamage + strikeDamage() / 2;
        if (entrenched) {
            damage = damage + 6;
        }
        return damage;
    }

    public void fireVolley() {
        if (canBombard()) {
            ammoCarts = ammoCarts - 1;
            reloadTime = reloadTime + 0.5;
        }
    }

    public void entrench() {
        entrenched = true;
        reloadTime = reloadTime - 0.3;
        if (reloadTime < 1.0) {
            reloadTime = 1.0;
        }
    }

    public double siegeValue() {
        double value = threatRating() + bombardDamage() * 0.4;
        if (entrenched) {
            value = value * 1.2;
        }
        return value;
    }

    public boolean crewShorthanded() {
        int needed = 3;
        if (entrenched) {
            needed = 2;
        }
        return crewSize < needed;
    }

    public String siegeReport() {
        String report = unitTag() + " carts=" + ammoCarts;
        if (crewShorthanded()) {
            report = report + " short crew";
        }
        return report;
    }

    public void resupply(int carts, int crew) {
        ammoCarts = ammoCarts + carts;
        crewSize = crewSize + crew;
        if (ammoCarts > 9) {
            ammoCarts = 9;
        }
    }
}
