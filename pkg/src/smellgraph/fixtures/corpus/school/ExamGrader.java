public class ExamGrader {
    int passMark;
    double classAverage;
    int retakesAllowed;
    boolean strictMode;

    public void gradeStack(int[] raw, int[] weights, int total) {
        int sum = 0;
        for (int i = 0; i < raw.length; i = i + 1) {
            sum = sum + raw[i];
        }
        classAverage = (double) sum / raw.length;
        int weighted = weightedScore(raw, weights);
        int cutoff = passMark;
        if (strictMode) {
            cutoff = cutoff + 5;
        }
        int passed = 0;
        for (int i = 0; i < raw.length; i = i + 1) {
            if (raw[i] >= cutoff) {
                passed = passed + 1;
            }
        }
        printHistogram(raw, total);
        System.out.println("weighted " + weighted);
        System.out.println("passed " + passed + " of " + raw.length);
        if (passed < raw.length / 2) {
            retakesAllowed = retakesAllowed + 1;
        }
    }

    public void printHistogram(int[] scores, int total) {
        System.out.println("histogram of " + total);
        int low = 0;
        int mid = 0;
        int high = 0;
        for (int i = 0; i < scores.length; i = i + 1) {
            if (scores[i] < 50) {
                low = low + 1;
            } else if (scores[i] < 80) {
                mid = mid + 1;
            } else {
                high = high + 1;
            }
        }
        System.out.println("low " + low);
        System.out.println("mid " + mid);
        System.out.println("high " + high);
    }

    public int weightedScore(int[] raw, int[] weights) {
        int acc = 0;
        int weightSum = 0;
        for (int i = 0; i < raw.length; i = i + 1) {
            int w = 1;
            if (i < weights.length) {
                w = weights[i];
            }
            acc = acc + raw[i] * w;
            weightSum = weightSum + w;
        }
        if (weightSum == 0) {
            weightSum = 1;
        }
        return acc / weightSum;
    }

    public void curveSweep(int[] gaps, int depth, int base) {
        int adjusted = base + curvePenalty(gaps, depth) * 2;
        if (adjusted > 100) {
            adjusted = 100;
        }
        classAverage = classAverage * 0.5 + adjusted * 0.5;
        int bonus = 0;
        if (classAverage < passMark) {
            bonus = passMark - (int) classAverage;
        }
        if (bonus > 10) {
            bonus = 10;
        }
        int projected = adjusted + bonus;
        if (strictMode && projected > 95) {
            projected = 95;
        }
        System.out.println("curve to " + projected);
        if (projected > passMark) {
            retakesAllowed = retakesAllowed - 1;
        }
        if (retakesAllowed < 0) {
            retakesAllowed = 0;
        }
    }

    public int curvePenalty(int[] gaps, int depth) {
        int penalty = 0;
        for (int i = 0; i < gaps.length; i = i + 1) {
            int gap = gaps[i];
            if (gap < 0) {
                gap = -gap;
            }
            if (gap > depth) {
                penalty = penalty + gap - depth;
            } else {
                penalty = penalty + 1;
            }
        }
        if (penalty > 40) {
            penalty = 40;
        }
        return penalty;
    }

    public boolean halfwayDone(int gradedCount, int total) {
        return gradedCount * 2 >= total;
    }
}
