public class Equalizer {
    double bassGain;
    double midGain;
    double trebleGain;
    boolean bypass;
    int presetSlot;
    double headroom;

    public double applyBass(double sample) {
        if (bypass) {
            return sample;
        }
        double boosted = sample * (1.0 + bassGain);
        if (boosted > headroom) {
            boosted = headroom;
        }
        return boosted;
    }

    public double applyTreble(double sample) {
        if (bypass) {
            return sample;
        }
        double shaped = sample * (1.0 + trebleGain);
        return shaped;
    }

    public void flatten() {
        bassGain = 0.0;
        midGain = 0.0;
        trebleGain = 0.0;
    }

    public void nudgeMid(double delta) {
        midGain = midGain + delta;
        if (midGain > 2.0) {
            midGain = 2.0;
        }
        if (midGain < -2.0) {
            midGain = -2.0;
        }
    }

    public int savePreset() {
        presetSlot = presetSlot + 1;
        if (presetSlot > 9) {
            presetSlot = 0;
        }
        return presetSlot;
    }

    public String curveSummary() {
        String curve = bassGain + "/" + midGain + "/" + trebleGain;
        if (bypass) {
            curve = "flat";
        }
        return curve;
    }

    public double totalColoration() {
        double color = bassGain + midGain + trebleGain;
        if (color < 0.0) {
            color = -color;
        }
        return color;
    }

    public boolean nearlyFlat() {
        if (bypass) {
            return true;
        }
        return totalColoration() < 0.1;
    }

    public void widenHeadroom(double extra) {
        headroom = headroom + extra;
        if (headroom > 4.0) {
            headroom = 4.0;
        }
    }
}
