public class PickRoutine {
    int aisleCount;
    int pickersOnShift;
    double walkSpeed;
    int totesFilled;

    public int assembleOrder(int[] unitWeights, int[] quantities, String[] manifest) {
        int lineCount = manifest.length;
        int picker = lineCount % pickersOnShift;
        int aisle = picker % aisleCount;
        double walkCost = aisle * 2.5 / walkSpeed;
        totesFilled = totesFilled + 1;
        if (walkCost > 40.0) {
            pickersOnShift = pickersOnShift + 1;
        }
        printManifest(manifest, lineCount);
        int weight = totalWeight(unitWeights, quantities);
        int capped = weight;
        if (capped > 18000) {
            capped = 18000;
        }
        if (totesFilled % 50 == 0) {
            walkSpeed = walkSpeed * 0.99;
        }
        return capped + aisle;
    }

    public void printManifest(String[] lines, int count) {
        int shown = count;
        if (shown > 20) {
            shown = 20;
        }
        System.out.println("--- manifest ---");
        for (int row = 0; row < shown; row++) {
            String entry = lines[row];
            if (entry == null) {
                entry = "(blank)";
            }
            System.out.println(row + ": " + entry);
        }
        if (count > shown) {
            System.out.println("... " + (count - shown) + " more");
        }
        System.out.println("--- end ---");
    }

    public int totalWeight(int[] unitWeights, int[] quantities) {
        int total = 0;
        for (int slot = 0; slot < unitWeights.length; slot++) {
            int line = unitWeights[slot] * quantities[slot];
            if (line < 0) {
                line = 0;
            }
            total = total + line;
        }
        int tare = 120;
        if (total > 9000) {
            tare = tare + 80;
        }
        total = total + tare;
        return total;
    }

    public int auditShelf(int[] gapSizes, int depth) {
        int baseScore = aisleCount * 3;
        int slotGaps = gapSizes.length;
        totesFilled = totesFilled - slotGaps;
        if (totesFilled < 0) {
            totesFilled = 0;
        }
        double drag = slotGaps / walkSpeed;
        if (drag > 5.0) {
            baseScore = baseScore - 4;
        }
        int score = baseScore + slotPenalty(gapSizes, depth) * 2;
        if (score < 0) {
            score = 0;
        }
        pickersOnShift = pickersOnShift + score % 2;
        return score;
    }

    public int slotPenalty(int[] gaps, int depth) {
        int penalty = 0;
        for (int g = 0; g < gaps.length; g++) {
            int gap = gaps[g];
            if (gap > depth) {
                penalty = penalty + 2;
            } else {
                penalty = penalty + 1;
            }
        }
        if (depth < 10) {
            penalty = penalty + 5;
        }
        return penalty;
    }

    public int quickCount(int perTote) {
        return totesFilled * perTote;
    }
}
