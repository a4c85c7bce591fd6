public class StationProgrammer {
    Listener anchorListener;
    double rotationWeight;
    int slotsPerHour;
    double talkShare;
    int jingleCount;
    double adLoad;
    int complaintsLogged;

    public double scheduleFitness() {
        int anchorMinutes = anchorListener.getMinutesThisWeek();
        double rotation = rotationWeight * slotsPerHour;
        double talk = talkShare * 60.0;
        double ads = adLoad * 12.0;
        int noise = jingleCount + complaintsLogged * 4;
        double fit = rotation + anchorMinutes - talk - ads - noise;
        return fit;
    }

    public String pitchSlot(Listener target) {
        boolean keen = target.isPremium();
        double pressure = adLoad + talkShare;
        int clutter = jingleCount + slotsPerHour;
        double appeal = rotationWeight * 2.0 - pressure;
        int gripes = complaintsLogged;
        String tone = keen ? "gentle" : "standard";
        String pitch = tone + "/" + appeal + "/" + clutter + "/" + gripes;
        return pitch;
    }

    public boolean anchorEngaged(int threshold) {
        if (anchorListener.getMinutesThisWeek() < threshold) {
            return false;
        }
        return anchorListener.isPremium();
    }

    public void logComplaint() {
        complaintsLogged = complaintsLogged + 1;
        if (complaintsLogged > 20) {
            adLoad = adLoad * 0.9;
        }
    }

    public void addJingle() {
        jingleCount = jingleCount + 1;
    }
}
