public class FlightLeg extends TripLeg {
    String flightNumber;
    int gateChanges;
    int checkedBags;
    double fuelSurcharge;
    boolean lounge;

    public double totalFare() {
        double total = fareEstimate() + fuelSurcharge;
        total = total + checkedBags * 30.0;
        if (lounge) {
            total = total + 45.0;
        }
        return total;
    }

    public boolean boardingRisk() {
        if (gateChanges > 2) {
            return true;
        }
        return departsEarly() && checkedBags > 1;
    }

    public String manifestLine() {
        String line = flightNumber + " " + legLabel();
        if (lounge) {
            line = line + " lounge";
        }
        return line;
    }

    public void recordGateChange() {
        gateChanges = gateChanges + 1;
        if (gateChanges > 5) {
            gateChanges = 5;
        }
    }

    public double comfortIndex() {
        double comfort = 1.0 - gateChanges * 0.1;
        if (lounge) {
            comfort = comfort + 0.3;
        }
        if (longHaul()) {
            comfort = comfort - 0.2;
        }
        return comfort;
    }

    public int bagAllowanceLeft() {
        int allowance = 2;
        if (lounge) {
            allowance = 3;
        }
        int left = allowance - checkedBags;
        if (left < 0) {
            left = 0;
        }
        return left;
    }

    public boolean upgradeWorthIt() {
        double gap = totalFare() - fareEstimate();
        if (gap < 60.0) {
            return true;
        }
        return comfortIndex() < 0.5;
    }

    public String boardingCall() {
        String call = "Flight " + flightNumber;
        if (boardingRisk()) {
            call = call + " check gate";
        } else {
            call = call + " on time";
        }
        return call;
    }
}
