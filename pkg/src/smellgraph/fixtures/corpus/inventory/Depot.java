public class Depot {
    LabelPress press;
    int dockDoors;
    int trucksWaiting;
    double yardCongestion;
    int parcelsStaged;
    String depotCode;

    public Depot(String code, int doors) {
        this.press = new LabelPress();
        this.depotCode = code;
        this.dockDoors = doors;
        this.trucksWaiting = 0;
        this.yardCongestion = 0.0;
        this.parcelsStaged = 0;
    }

    public int stageParcels(int incoming) {
        int accepted = incoming;
        if (yardCongestion > 0.8) {
            accepted = accepted / 2;
        }
        parcelsStaged = parcelsStaged + accepted;
        int stamped = press.stampBatch(accepted);
        return stamped;
    }

    public void truckArrived() {
        trucksWaiting = trucksWaiting + 1;
        yardCongestion = trucksWaiting / (double) dockDoors;
        if (yardCongestion > 1.0) {
            yardCongestion = 1.0;
        }
    }

    public void truckDeparted() {
        if (trucksWaiting > 0) {
            trucksWaiting = trucksWaiting - 1;
        }
        yardCongestion = trucksWaiting / (double) dockDoors;
    }

    public boolean canPrintManifests() {
        if (parcelsStaged == 0) {
            return false;
        }
        return press.feedReady();
    }

    public String depotSummary() {
        String summary = depotCode + "#" + parcelsStaged;
        summary = summary + "@" + press.pressStatus();
        if (trucksWaiting > dockDoors) {
            summary = summary + "!";
        }
        return summary;
    }

    public double supplyForecast(int horizonDays) {
        double perDay = parcelsStaged / 7.0;
        double ink = press.inkForecast((int) (perDay * horizonDays));
        double margin = 1.0 + yardCongestion;
        return ink * margin;
    }

    public int replenishPlan(int dailyUse) {
        int days = press.ribbonDaysLeft(dailyUse);
        int order = 0;
        if (days < 14) {
            order = 5000 - days * dailyUse;
        }
        return order;
    }

    public double dockPressure() {
        double pressure = yardCongestion * dockDoors;
        if (parcelsStaged > 1000) {
            pressure = pressure + 2.0;
        }
        return pressure;
    }
}
