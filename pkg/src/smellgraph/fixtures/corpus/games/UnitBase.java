public class UnitBase {
    int hitPoints;
    int attackPower;
    int moveRange;
    int level;
    String faction;
    boolean veteran;

    public boolean alive() {
        return hitPoints > 0;
    }

    public void takeDamage(int amount) {
        int effective = amount;
        if (veteran) {
            effective = effective - 2;
        }
        if (effective < 0) {
            effective = 0;
        }
        hitPoints = hitPoints - effective;
    }

    public int strikeDamage() {
        int damage = attackPower + level;
        if (veteran) {
            damage = damage + 3;
        }
        return damage;
    }

    public void levelUp() {
        level = level + 1;
        hitPoints = hitPoints + 5;
        attackPower = attackPower + 1;
        if (level >= 5) {
            veteran = true;
        }
    }

    public boolean canReach(int distance) {
        int range = moveRange;
        if (hitPoints < 10) {
            range = range - 1;
        }
        return distance <= range;
    }

    public String unitTag() {
        String tag = faction + " L" + level;
        if (veteran) {
            tag = tag + "*";
        }
        return tag;
    }

    public double threatRating() {
        double threat = strikeDamage() * 0.6 + hitPoints * 0.2;
        threat = threat + moveRange * 0.5;
        return threat;
    }

    public boolean retreating() {
        return alive() && hitPoints < 8;
    }

    public int healNeeded(int fullHp) {
        int missing = fullHp - hitPoints;
        if (missing < 0) {
            missing = 0;
        }
        return missing;
    }

    public boolean outclasses(double enemyThreat) {
        double margin = threatRating() - enemyThreat;
        if (veteran) {
            margin = margin + 1.0;
        }
        return margin > 2.0;
    }
}
