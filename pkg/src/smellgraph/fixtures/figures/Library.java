public class Library {
    int bookCount;
    int memberCount;
    double lateFee;

    public void addBook(int copies) {
        bookCount = bookCount + copies;
    }

    public void addMember() {
        memberCount = memberCount + 1;
    }

    public double chargeFor(int daysLate) {
        double charge = lateFee * daysLate;
        if (memberCount > 100) {
            charge = charge * 0.8;
        }
        return charge;
    }

    public double dailyReport(int daysLate) {
        double total = chargeFor(daysLate);
        return total + bookCount;
    }
}
