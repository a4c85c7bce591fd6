public class MixerDeck {
    Equalizer booth;
    double crossfade;
    int channelCount;
    double masterVolume;
    int clipEvents;
    String deckName;

    public MixerDeck(String name, int channels) {
        this.booth = new Equalizer();
        this.deckName = name;
        this.channelCount = channels;
        this.crossfade = 0.5;
        this.masterVolume = 0.8;
        this.clipEvents = 0;
    }

    public double mixSample(double left, double right) {
        double blended = left * (1.0 - crossfade) + right * crossfade;
        blended = booth.applyBass(blended);
        blended = blended * masterVolume;
        if (blended > 1.0) {
            blended = 1.0;
            clipEvents = clipEvents + 1;
        }
        return blended;
    }

    public void panicReset() {
        booth.flatten();
        crossfade = 0.5;
        masterVolume = 0.7;
    }

    public String deckStatus() {
        String status = deckName + " ch" + channelCount;
        status = status + " eq=" + booth.curveSummary();
        if (clipEvents > 10) {
            status = status + " CLIP";
        }
        return status;
    }

    public double brightnessBoost(double sample) {
        double bright = booth.applyTreble(sample);
        double adjusted = bright * masterVolume;
        return adjusted;
    }

    public int rotatePreset() {
        int slot = booth.savePreset();
        clipEvents = 0;
        return slot;
    }

    public boolean mixClean() {
        if (clipEvents > 0) {
            return false;
        }
        return booth.totalColoration() < 1.5;
    }

    public void rideVolume(double target) {
        double step = (target - masterVolume) * 0.1;
        masterVolume = masterVolume + step;
        if (masterVolume > 1.0) {
            masterVolume = 1.0;
        }
    }

    public double crossfadeCurve(int position) {
        double curve = position / 100.0;
        if (curve > 1.0) {
            curve = 1.0;
        }
        crossfade = curve;
        return curve;
    }
}
