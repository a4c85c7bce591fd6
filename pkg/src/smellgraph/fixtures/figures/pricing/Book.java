public class Book {
    Price price;
    int sold;
    double weight;

    public Book(Price price, int sold, double weight) {
        this.price = price;
        this.sold = sold;
        this.weight = weight;
    }

    public double getPrice() {
        return price.getAmount();
    }

    public double discount(Campaign campaign) {
        double amount = price.getAmount();
        double rate = campaign.shippingRate;
        return amount * (1.0 - rate);
    }

    public int getSold() {
        return sold;
    }

    public double getWeight() {
        return weight;
    }
}
