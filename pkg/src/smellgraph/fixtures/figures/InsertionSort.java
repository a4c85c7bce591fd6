public class InsertionSort {
    public void sort(int[] ary) {
        int i = 1;
        while (i < ary.length) {
            int j = i;
            while (j > 0 && ary[j - 1] > ary[j]) {
                int tmp = ary[j];
                ary[j] = ary[j - 1];
                ary[j - 1] = tmp;
                j = j - 1;
            }
            i = i + 1;
        }
    }
}
