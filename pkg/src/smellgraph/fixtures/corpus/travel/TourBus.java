public class TourBus {
    FuelLog log;
    int seats;
    int passengers;
    int stopsPlanned;
    double ticketPrice;
    boolean airConditioned;

    public TourBus(int seats, double ticketPrice) {
        this.seats = seats;
        this.ticketPrice = ticketPrice;
        this.log = new FuelLog();
    }

    public void driveSegment(int km, int odometerNow) {
        double per100 = log.consumptionPer100(odometerNow);
        if (per100 <= 0.0) {
            per100 = 28.0;
        }
        log.burn(km * per100 / 100.0);
        if (log.tankLow()) {
            log.refuel(80.0);
        }
    }

    public double tripProfit() {
        double revenue = passengers * ticketPrice;
        double cost = log.spendSoFar();
        if (airConditioned) {
            cost = cost + passengers * 0.5;
        }
        return revenue - cost;
    }

    public boolean boardGroup(int size) {
        if (passengers + size > seats) {
            return false;
        }
        passengers = passengers + size;
        return true;
    }

    public String dashboardLine() {
        String line = passengers + "/" + seats + " " + log.pumpReport();
        if (airConditioned) {
            line = line + " AC";
        }
        return line;
    }

    public double occupancyRate() {
        if (seats == 0) {
            return 0.0;
        }
        return (double) passengers / seats;
    }

    public void finishTour(int odometerNow) {
        log.resetTrip(odometerNow);
        passengers = 0;
        stopsPlanned = 0;
    }

    public boolean viableRoute(double per100) {
        double range = log.rangeLeft(per100);
        return range > stopsPlanned * 45.0;
    }

    public void planStop() {
        stopsPlanned = stopsPlanned + 1;
        if (stopsPlanned > 12) {
            stopsPlanned = 12;
        }
    }

    public boolean standingRoomOnly() {
        if (!airConditioned) {
            return false;
        }
        return passengers > seats;
    }
}
