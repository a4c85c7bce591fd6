public class Price {
    double amount;
    double taxRate;

    public Price(double amount, double taxRate) {
        this.amount = amount;
        this.taxRate = taxRate;
    }

    public double getAmount() {
        return amount;
    }

    public double getTaxRate() {
        return taxRate;
    }

    public double gross() {
        return amount * (1.0 + taxRate);
    }
}
