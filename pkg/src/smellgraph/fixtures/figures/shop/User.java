public class User {
    String name;
    int loyaltyPoints;

    public User(String name) {
        this.name = name;
        this.loyaltyPoints = 0;
    }

    public void earnPoints(int points) {
        loyaltyPoints = loyaltyPoints + points;
    }

    public int getLoyaltyPoints() {
        return loyaltyPoints;
    }
}
