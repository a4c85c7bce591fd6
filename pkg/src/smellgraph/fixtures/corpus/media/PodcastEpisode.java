public class PodcastEpisode extends TrackBase {
    int episodeNumber;
    int adSlots;
    double completionRate;
    String showName;
    boolean memberOnly;
    int transcriptWords;

    public double adRevenue(double cpm) {
        double impressions = completionRate * adSlots;
        double revenue = impressions * cpm / 1000.0;
        if (memberOnly) {
            revenue = revenue * 0.2;
        }
        return revenue;
    }

    public boolean worthPromoting() {
        if (completionRate < 0.4) {
            return false;
        }
        return episodeNumber > 3;
    }

    public String feedEntry() {
        String entry = showName + " ep." + episodeNumber;
        if (memberOnly) {
            entry = entry + " (members)";
        }
        return entry;
    }

    public int readingTimeMinutes() {
        int minutes = transcriptWords / 200;
        if (minutes < 1) {
            minutes = 1;
        }
        return minutes;
    }

    public void recordCompletion(double fraction) {
        completionRate = completionRate * 0.95 + fraction * 0.05;
        if (completionRate > 1.0) {
            completionRate = 1.0;
        }
    }

    public int sellAdSlot() {
        if (adSlots < 8) {
            adSlots = adSlots + 1;
        }
        return adSlots;
    }

    public double engagementIndex() {
        double base = completionRate * 10.0;
        double depth = transcriptWords / 1500.0;
        double index = base + depth;
        if (index > 12.0) {
            index = 12.0;
        }
        return index;
    }

    public boolean flagshipEpisode() {
        if (engagementIndex() < 8.0) {
            return false;
        }
        return worthPromoting() && radioSafe();
    }

    public String chapterStamp(int chapter) {
        int offset = chapter * durationSeconds / 10;
        return episodeNumber + ":" + offset;
    }
}
