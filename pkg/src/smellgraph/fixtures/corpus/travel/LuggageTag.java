public class LuggageTag {
    String tagCode;
    double weightKg;

    public boolean overweight(double limitKg) {
        return weightKg > limitKg;
    }

    public String display() {
        return tagCode + " " + weightKg + "kg";
    }

    public void addWeight(double extraKg) {
        weightKg = weightKg + extraKg;
        if (weightKg < 0.0) {
            weightKg = 0.0;
        }
    }
}
