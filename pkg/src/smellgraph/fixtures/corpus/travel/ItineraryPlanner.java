public class ItineraryPlanner {
    double dailyBudget;
    int travelers;
    int restDays;
    boolean shoulderSeason;

    public void buildWeek(int[] nightlyRates, int[] cityTaxes, int nights) {
        double lodging = lodgingCost(nightlyRates, cityTaxes);
        double food = travelers * 35.0 * nights;
        double activities = 0.0;
        for (int i = 0; i < nights; i = i + 1) {
            if (i % 3 == 0) {
                activities = activities + travelers * 20.0;
            }
        }
        double total = lodging + food + activities;
        if (shoulderSeason) {
            total = total * 0.9;
        }
        double perDay = total / nights;
        printDaySheet(nightlyRates, nights);
        System.out.println("lodging " + lodging);
        System.out.println("per day " + perDay);
        if (perDay > dailyBudget) {
            restDays = restDays + 1;
            System.out.println("over budget");
        }
        if (restDays > nights / 2) {
            restDays = nights / 2;
        }
    }

    public void printDaySheet(int[] rates, int nights) {
        System.out.println("sheet for " + nights + " nights");
        int cheapest = 9999;
        int priciest = 0;
        for (int i = 0; i < rates.length; i = i + 1) {
            if (rates[i] < cheapest) {
                cheapest = rates[i];
            }
            if (rates[i] > priciest) {
                priciest = rates[i];
            }
        }
        System.out.println("cheapest " + cheapest);
        System.out.println("priciest " + priciest);
        System.out.println("spread " + (priciest - cheapest));
    }

    public double lodgingCost(int[] nightlyRates, int[] cityTaxes) {
        double cost = 0.0;
        for (int i = 0; i < nightlyRates.length; i = i + 1) {
            int tax = 0;
            if (i < cityTaxes.length) {
                tax = cityTaxes[i];
            }
            cost = cost + nightlyRates[i] + tax;
        }
        if (cost < 0.0) {
            cost = 0.0;
        }
        return cost;
    }

    public void reviewTransfers(int[] waits, int tightLimit, int base) {
        int score = base + transferPenalty(waits, tightLimit) * 3;
        if (score > 100) {
            score = 100;
        }
        int buffer = 0;
        if (score > 60) {
            buffer = (score - 60) / 2;
        }
        if (shoulderSeason && buffer > 10) {
            buffer = 10;
        }
        int padded = score + buffer;
        System.out.println("transfer score " + padded);
        if (padded > 80) {
            restDays = restDays + 1;
        }
        if (travelers > 4 && padded > 70) {
            System.out.println("split the group");
        }
        if (restDays > 6) {
            restDays = 6;
        }
    }

    public int transferPenalty(int[] waits, int tightLimit) {
        int penalty = 0;
        for (int i = 0; i < waits.length; i = i + 1) {
            int wait = waits[i];
            if (wait < 0) {
                wait = 0;
            }
            if (wait < tightLimit) {
                penalty = penalty + tightLimit - wait;
            } else if (wait > 180) {
                penalty = penalty + 2;
            }
        }
        if (penalty > 50) {
            penalty = 50;
        }
        return penalty;
    }

    public boolean feasibleBudget(double estimate) {
        return estimate <= dailyBudget * 1.1;
    }
}
