public class StudentCard {
    int gradeLevel;
    int mealCredits;
    boolean busPass;

    public int getGradeLevel() {
        return gradeLevel;
    }

    public int getMealCredits() {
        return mealCredits;
    }

    public boolean hasBusPass() {
        return busPass;
    }

    public String cardLine() {
        return "grade " + gradeLevel + " credits " + mealCredits;
    }
}
