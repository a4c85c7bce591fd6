public class PassportFile {
    int expiryYear;
    int blankPages;
    boolean biometric;

    public int getExpiryYear() {
        return expiryYear;
    }

    public int getBlankPages() {
        return blankPages;
    }

    public boolean isBiometric() {
        return biometric;
    }

    public String stampLine() {
        return "pages " + blankPages + " exp " + expiryYear;
    }
}
