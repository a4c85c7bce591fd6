public class Product {
    String title;
    double basePrice;

    public String getTitle() {
        return title;
    }

    public double priceWithTax(double rate) {
        return basePrice * (1.0 + rate);
    }
}
