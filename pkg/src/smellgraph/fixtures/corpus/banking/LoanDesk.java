public class LoanDesk {
    int applicationsToday;
    double baseApr;
    int deskTier;
    double writeOffTotal;

    public double reviewApplication(double principal, int termMonths, String[] creditLines) {
        applicationsToday = applicationsToday + 1;
        double apr = baseApr + deskTier * 0.25;
        int lineTotal = creditLines.length;
        if (lineTotal > 8) {
            apr = apr + 0.5;
        }
        double monthly = principal / termMonths;
        if (monthly > 2500.0) {
            apr = apr - 0.1;
        }
        printCreditLines(creditLines, lineTotal);
        double interest = totalInterest(principal, apr, termMonths);
        double exposure = interest + principal;
        if (exposure > 250000.0) {
            writeOffTotal = writeOffTotal + 1.0;
        }
        if (applicationsToday > 30) {
            baseApr = baseApr + 0.05;
        }
        return exposure;
    }

    public void printCreditLines(String[] lines, int total) {
        System.out.println("== credit history ==");
        int shown = total;
        if (shown > 12) {
            shown = 12;
        }
        for (int idx = 0; idx < shown; idx++) {
            String row = lines[idx];
            if (row == null) {
                row = "(missing)";
            }
            System.out.println(idx + " | " + row);
        }
        if (total > shown) {
            System.out.println("truncated " + (total - shown));
        }
        System.out.println("== end ==");
    }

    public double totalInterest(double principal, double apr, int months) {
        double rate = apr / 100.0 / 12.0;
        double owed = principal;
        double paid = 0.0;
        for (int month = 0; month < months; month++) {
            double charge = owed * rate;
            paid = paid + charge;
            owed = owed - principal / months;
            if (owed < 0.0) {
                owed = 0.0;
            }
        }
        double rounded = (int) (paid * 100.0) / 100.0;
        return rounded;
    }

    public double riskSweep(double[] balances, int daysLate) {
        double pool = 0.0;
        int flagged = 0;
        for (int b = 0; b < balances.length; b++) {
            pool = pool + balances[b];
            if (balances[b] > 10000.0) {
                flagged = flagged + 1;
            }
        }
        double drag = pool * baseApr / 1200.0;
        writeOffTotal = writeOffTotal + drag * 0.01;
        double burden = drag + latePenalty(daysLate, flagged) * 1.5;
        if (burden > pool) {
            burden = pool;
        }
        deskTier = flagged > 4 ? deskTier + 1 : deskTier;
        return burden;
    }

    public double latePenalty(int daysLate, int flaggedCount) {
        double penalty = 0.0;
        if (daysLate > 30) {
            penalty = 25.0;
        }
        if (daysLate > 90) {
            penalty = penalty + 75.0;
        }
        double scaled = penalty * (1 + flaggedCount * 0.2);
        if (scaled > 500.0) {
            scaled = 500.0;
        }
        if (scaled < 0.0) {
            scaled = 0.0;
        }
        return scaled;
    }

    public int deskLoad() {
        return applicationsToday * deskTier;
    }
}
