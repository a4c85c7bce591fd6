public class SortDemo {
    int reported;

    public void run(int[] values) {
        int max = values[0];
        for (int i = 1; i < values.length; i++) {
            if (values[i] > max) {
                max = values[i];
            }
        }
        print_ary(values);
        reported = max;
    }

    void print_ary(int[] ary) {
        for (int i = 0; i < ary.length; i++) {
            System.out.println(ary[i]);
        }
    }
}
