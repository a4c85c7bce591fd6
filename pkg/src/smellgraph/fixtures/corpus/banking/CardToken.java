public class CardToken {
    String maskedPan;
    int expiryMonth;
    int expiryYear;
    String network;

    public int getExpiryMonth() {
        return expiryMonth;
    }

    public int getExpiryYear() {
        return expiryYear;
    }

    public String getNetwork() {
        return network;
    }

    public String shortForm() {
        return network + ":" + maskedPan;
    }
}
