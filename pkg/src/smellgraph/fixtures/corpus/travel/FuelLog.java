public class FuelLog {
    double litersUsed;
    double litersTank;
    int refuelStops;
    double pricePerLiter;
    int odometerStart;
    boolean dieselEngine;

    public void burn(double liters) {
        litersUsed = litersUsed + liters;
        litersTank = litersTank - liters;
        if (litersTank < 0.0) {
            litersTank = 0.0;
        }
    }

    public void refuel(double liters) {
        litersTank = litersTank + liters;
        refuelStops = refuelStops + 1;
    }

    public double spendSoFar() {
        double spend = litersUsed * pricePerLiter;
        if (dieselEngine) {
            spend = spend * 0.95;
        }
        return spend;
    }

    public boolean tankLow() {
        return litersTank < 15.0;
    }

    public double consumptionPer100(int odometerNow) {
        int driven = odometerNow - odometerStart;
        if (driven <= 0) {
            return 0.0;
        }
        return litersUsed * 100.0 / driven;
    }

    public String pumpReport() {
        String report = refuelStops + " stops";
        if (tankLow()) {
            report = report + " tank low";
        }
        return report;
    }

    public void resetTrip(int odometerNow) {
        litersUsed = 0.0;
        refuelStops = 0;
        odometerStart = odometerNow;
    }

    public double rangeLeft(double per100) {
        if (per100 <= 0.0) {
            return 0.0;
        }
        return litersTank * 100.0 / per100;
    }

    public double stopsPerThousand(int odometerNow) {
        int driven = odometerNow - odometerStart;
        if (driven <= 0) {
            return 0.0;
        }
        return refuelStops * 1000.0 / driven;
    }

    public boolean priceSpike(double marketPrice) {
        double gap = marketPrice - pricePerLiter;
        if (dieselEngine) {
            gap = gap - 0.05;
        }
        return gap > 0.3;
    }
}
