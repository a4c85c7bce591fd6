public class TrackBase {
    int durationSeconds;
    int playCount;
    double loudness;
    int bitrate;
    String title;
    boolean explicitLyrics;

    public double popularity() {
        double pop = playCount / 1000.0;
        if (pop > 100.0) {
            pop = 100.0;
        }
        return pop;
    }

    public boolean radioSafe() {
        if (explicitLyrics) {
            return false;
        }
        return durationSeconds <= 300;
    }

    public void registerPlay() {
        playCount = playCount + 1;
        if (playCount % 1000 == 0) {
            loudness = loudness * 0.999;
        }
    }

    public String displayTitle() {
        String text = title;
        if (explicitLyrics) {
            text = text + " [E]";
        }
        return text;
    }

    public int storageKilobytes() {
        int kb = durationSeconds * bitrate / 8;
        if (kb < 0) {
            kb = 0;
        }
        return kb;
    }

    public double normalizedLoudness() {
        double norm = loudness + 14.0;
        if (norm < 0.0) {
            norm = 0.0;
        }
        return norm / 14.0;
    }

    public boolean isShort() {
        return durationSeconds < 120;
    }

    public int minutesRounded() {
        int minutes = (durationSeconds + 30) / 60;
        return minutes;
    }

    public boolean loudnessClipped() {
        if (loudness > -1.0) {
            return true;
        }
        return normalizedLoudness() > 0.95;
    }

    public String archiveKey() {
        String key = title + "-" + bitrate;
        if (isShort()) {
            key = key + "-s";
        }
        return key;
    }

    public int playsPerMinute() {
        int minutes = minutesRounded();
        if (minutes == 0) {
            return playCount;
        }
        return playCount / minutes;
    }
}
