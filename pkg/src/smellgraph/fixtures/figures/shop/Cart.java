public class Cart {
    User user;
    double total;
    int itemCount;

    public Cart(String ownerName) {
        this.user = new User(ownerName);
        this.total = 0.0;
        this.itemCount = 0;
    }

    public void addItem(double price) {
        total = total + price;
        itemCount = itemCount + 1;
    }

    public void checkout() {
        int earned = (int) total;
        user.earnPoints(earned);
    }

    public boolean hasDiscount() {
        return user.getLoyaltyPoints() > 200;
    }
}
