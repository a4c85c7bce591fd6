public class TellerWindow {
    ReceiptPrinter printer;
    int customersServed;
    int cashOnHand;
    int windowNumber;
    double avgServiceSeconds;
    boolean expressLane;

    public TellerWindow(int number) {
        this.printer = new ReceiptPrinter();
        this.windowNumber = number;
        this.customersServed = 0;
        this.cashOnHand = 10000;
        this.avgServiceSeconds = 90.0;
        this.expressLane = false;
    }

    public int serveCustomer(int receiptLines, int cashDelta) {
        customersServed = customersServed + 1;
        cashOnHand = cashOnHand + cashDelta;
        if (cashOnHand < 0) {
            cashOnHand = 0;
        }
        int sheets = printer.issueReceipt(receiptLines);
        avgServiceSeconds = avgServiceSeconds * 0.9 + receiptLines * 0.4;
        return sheets;
    }

    public boolean readyForNext() {
        if (expressLane && avgServiceSeconds > 120.0) {
            return false;
        }
        return !printer.paperLow();
    }

    public void restock(int sheets, int cash) {
        printer.loadPaper(sheets);
        cashOnHand = cashOnHand + cash;
    }

    public String windowStatus() {
        String status = "W" + windowNumber + ":" + customersServed;
        status = status + " | " + printer.bannerLine();
        if (expressLane) {
            status = status + " EXPRESS";
        }
        return status;
    }

    public double endOfDayScore() {
        double wear = printer.maintenanceScore();
        double pace = 3600.0 / avgServiceSeconds;
        double score = customersServed * pace - wear;
        if (score < 0.0) {
            score = 0.0;
        }
        return score;
    }

    public int flushJobs(int capacity) {
        int done = printer.drainQueue(capacity);
        customersServed = customersServed + done;
        return done;
    }

    public boolean cashHealthy() {
        if (cashOnHand < 2000) {
            return false;
        }
        return cashOnHand < 50000;
    }
}
