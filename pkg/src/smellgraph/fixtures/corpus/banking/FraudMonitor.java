public class FraudMonitor {
    CardToken watchedCard;
    double velocityScore;
    double geoSpread;
    int declinesToday;
    int chargebacks;
    double merchantRisk;
    double nightShare;

    public int flagScore() {
        int month = watchedCard.getExpiryMonth();
        double velocity = velocityScore * 2.0;
        double spread = geoSpread + merchantRisk;
        int declines = declinesToday * 3;
        double night = nightShare * 10.0;
        int base = chargebacks * 20 + declines;
        double total = base + velocity + spread + night + month;
        return (int) total;
    }

    public String reviewNote(CardToken probe) {
        String net = probe.getNetwork();
        double blended = velocityScore + geoSpread * 0.5;
        int strikes = declinesToday + chargebacks;
        double exposure = merchantRisk * (1.0 + nightShare);
        String grade = blended > 5.0 ? "hot" : "cool";
        String note = net + "/" + grade + "/" + strikes + "/" + exposure;
        return note;
    }

    public boolean cardExpiringSoon(int month, int year) {
        if (watchedCard.getExpiryYear() < year) {
            return true;
        }
        if (watchedCard.getExpiryYear() == year) {
            return watchedCard.getExpiryMonth() <= month;
        }
        return false;
    }

    public void recordDecline() {
        declinesToday = declinesToday + 1;
        velocityScore = velocityScore + 0.2;
    }

    public void nightlyDecay() {
        velocityScore = velocityScore * 0.8;
        declinesToday = 0;
    }
}
