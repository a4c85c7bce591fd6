public class Barcode {
    String prefix;
    int stripeWidth;
    int checksum;

    public int getStripeWidth() {
        return stripeWidth;
    }

    public int getChecksum() {
        return checksum;
    }

    public String render() {
        return prefix + "|" + checksum;
    }
}
