public class TuitionDesk {
    StudentCard primaryCard;
    double baseTuition;
    double aidBudget;
    int invoicesSent;
    int latePayments;
    double siblingDiscount;
    int paymentPlans;

    public double billingScore() {
        double score = baseTuition / 1000.0;
        score = score - aidBudget / 2000.0;
        score = score + latePayments * 0.5;
        score = score - siblingDiscount;
        score = score + invoicesSent * 0.01;
        if (paymentPlans > 3) {
            score = score - 0.5;
        }
        if (primaryCard.getMealCredits() < 5) {
            score = score + 0.25;
        }
        return score;
    }

    public String invoiceNote(StudentCard card) {
        double due = baseTuition - aidBudget / 10.0;
        due = due - siblingDiscount * 100.0;
        if (card.hasBusPass()) {
            due = due + 40.0;
        }
        String note = "due " + due;
        if (latePayments > 0) {
            note = note + " late " + latePayments;
        }
        note = note + " plan " + paymentPlans;
        note = note + " sent " + invoicesSent;
        return note;
    }

    public boolean primaryIsSenior() {
        if (primaryCard.getGradeLevel() >= 12) {
            return true;
        }
        return primaryCard.getMealCredits() > 20;
    }

    public void recordPayment(boolean onTime) {
        invoicesSent = invoicesSent + 1;
        if (!onTime) {
            latePayments = latePayments + 1;
        }
    }

    public void openPlan() {
        paymentPlans = paymentPlans + 1;
    }
}
