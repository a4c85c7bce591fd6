public class BinRack {
    int slotCount;
    int slotDepth;
    double railLoad;
    double railLimit;
    int binWidth;
    String rackZone;

    public int usableSlots() {
        int usable = slotCount;
        if (slotDepth < 40) {
            usable = usable - 2;
        }
        if (railLoad > railLimit * 0.8) {
            usable = usable - 4;
        }
        return usable;
    }

    public double loadHeadroom() {
        double headroom = railLimit - railLoad;
        if (headroom < 0.0) {
            headroom = 0.0;
        }
        return headroom;
    }

    public boolean acceptsBin(int width, double weight) {
        if (width > binWidth) {
            return false;
        }
        return railLoad + weight <= railLimit;
    }

    public void settleLoad(double added) {
        railLoad = railLoad + added;
        if (railLoad > railLimit) {
            railLoad = railLimit;
        }
    }

    public String zoneTag() {
        return rackZone + "-" + slotCount;
    }

    public int widthClass() {
        int cls = 0;
        if (binWidth > 30) {
            cls = 1;
        }
        if (binWidth > 60) {
            cls = 2;
        }
        return cls;
    }

    public double railShare(double weight) {
        if (railLimit <= 0.0) {
            return 1.0;
        }
        double share = weight / railLimit;
        return share;
    }

    public boolean zoneMatches(String wanted) {
        if (wanted == null) {
            return false;
        }
        return wanted.equals(rackZone);
    }

    public int restockBatch(int perSlot) {
        int open = slotCount - usableSlots();
        int batch = open * perSlot;
        if (batch < 0) {
            batch = 0;
        }
        return batch;
    }
}
