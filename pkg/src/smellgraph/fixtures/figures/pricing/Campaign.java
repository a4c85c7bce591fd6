public class Campaign {
    double shippingRate;

    public Campaign(double shippingRate) {
        this.shippingRate = shippingRate;
    }

    public double discount(Book book) {
        double amount = book.getPrice();
        int sold = book.getSold();
        if (sold > 50) {
            amount = amount * 0.9;
        }
        double shipping = book.getWeight() * shippingRate;
        return amount + shipping;
    }
}
