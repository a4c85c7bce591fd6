public class CrateScale {
    Barcode tag;
    double emptyCrate;
    double grossLimit;
    double lastReading;
    double driftPerDay;
    int readingsTaken;
    int overloads;

    public double netWeight(double observed) {
        lastReading = observed;
        readingsTaken = readingsTaken + 1;
        if (observed > grossLimit) {
            overloads = overloads + 1;
        }
        return observed - emptyCrate;
    }

    public int labelQuality() {
        int stripes = tag.getStripeWidth();
        double drift = driftPerDay * readingsTaken;
        double margin = grossLimit - lastReading;
        double wearPenalty = emptyCrate * 0.01 + drift;
        int quality = stripes * 10 - overloads;
        if (margin < wearPenalty) {
            quality = quality - 5;
        }
        return quality;
    }

    public String calibrationNote(Barcode reference) {
        int expected = reference.getChecksum();
        double spread = grossLimit - emptyCrate;
        double wear = driftPerDay * readingsTaken;
        int flags = overloads * 2;
        double stability = lastReading - wear;
        String note = expected + "/" + flags + "/" + spread + "/" + stability;
        return note;
    }

    public boolean tagMatches(int width, int sum) {
        if (tag.getStripeWidth() != width) {
            return false;
        }
        return tag.getChecksum() == sum;
    }

    public void nightlyReset() {
        lastReading = 0.0;
        overloads = 0;
    }
}
