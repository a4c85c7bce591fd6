public class ReceiptPrinter {
    int paperRemaining;
    int receiptsIssued;
    double cutterWear;
    boolean duplexMode;
    String headerText;
    int queueDepth;

    public boolean paperLow() {
        if (duplexMode) {
            return paperRemaining < 40;
        }
        return paperRemaining < 20;
    }

    public int issueReceipt(int lineCount) {
        int sheets = 1 + lineCount / 40;
        if (duplexMode) {
            sheets = (sheets + 1) / 2;
        }
        paperRemaining = paperRemaining - sheets;
        receiptsIssued = receiptsIssued + 1;
        cutterWear = cutterWear + 0.002;
        return sheets;
    }

    public void loadPaper(int sheets) {
        paperRemaining = paperRemaining + sheets;
        if (paperRemaining > 2000) {
            paperRemaining = 2000;
        }
    }

    public double maintenanceScore() {
        double score = cutterWear * 10.0;
        if (queueDepth > 5) {
            score = score + 1.0;
        }
        return score;
    }

    public String bannerLine() {
        String line = headerText + " / " + receiptsIssued;
        if (paperLow()) {
            line = line + " LOW";
        }
        return line;
    }

    public void enqueue(int jobs) {
        queueDepth = queueDepth + jobs;
        if (queueDepth > 50) {
            queueDepth = 50;
        }
    }

    public int drainQueue(int capacity) {
        int processed = capacity;
        if (processed > queueDepth) {
            processed = queueDepth;
        }
        queueDepth = queueDepth - processed;
        return processed;
    }

    public boolean needsBlade() {
        return cutterWear > 0.8;
    }

    public int sheetsPerHundred() {
        if (duplexMode) {
            return 55;
        }
        return 100;
    }

    public String wearBadge() {
        if (needsBlade()) {
            return "replace blade";
        }
        return "blade ok";
    }
}
