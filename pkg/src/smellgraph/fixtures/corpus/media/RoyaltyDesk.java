public class RoyaltyDesk {
    double ratePerPlay;
    int artistsManaged;
    double reserveFund;
    int statementsSent;

    public double closeQuarter(int[] playCounts, double[] splits, String[] artistNames) {
        statementsSent = statementsSent + artistNames.length;
        double payable = 0.0;
        int starved = 0;
        for (int a = 0; a < playCounts.length; a++) {
            double owed = playCounts[a] * ratePerPlay * splits[a];
            payable = payable + owed;
            if (owed < 10.0) {
                starved = starved + 1;
            }
        }
        reserveFund = reserveFund - payable;
        if (reserveFund < 0.0) {
            reserveFund = 0.0;
        }
        printStatements(artistNames, playCounts);
        double adjusted = payable + topUpAmount(starved, payable);
        if (artistsManaged > 50) {
            ratePerPlay = ratePerPlay * 1.01;
        }
        return adjusted;
    }

    public void printStatements(String[] names, int[] plays) {
        System.out.println("=== royalty statements ===");
        int limit = names.length;
        if (limit > 15) {
            limit = 15;
        }
        for (int row = 0; row < limit; row++) {
            String who = names[row];
            if (who == null) {
                who = "(unknown artist)";
            }
            System.out.println(who + " plays=" + plays[row]);
        }
        if (names.length > limit) {
            System.out.println("and " + (names.length - limit) + " more");
        }
        System.out.println("=== end ===");
    }

    public double topUpAmount(int starvedCount, double payable) {
        double topUp = starvedCount * 5.0;
        if (payable > 10000.0) {
            topUp = topUp * 0.5;
        }
        double capped = topUp;
        if (capped > 200.0) {
            capped = 200.0;
        }
        return capped;
    }

    public double reserveRatio(double target) {
        double ratio = reserveFund / target;
        if (ratio > 1.0) {
            ratio = 1.0;
        }
        return ratio;
    }
}
