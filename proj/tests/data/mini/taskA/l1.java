import java.util.Scanner;

/*
 * Assignment 1: max and total of the input.
 */
public class Main {
    // find the maximum
    static int largest(int[] values) {
        int best = values[0];
        for (int i = 1; i < values.length; i++) {
            if (values[i] > best) {
                best = values[i];   // new maximum
            }
        }
        return best;
    }

    // add everything up
    static long total(int[] values) {
        long sum = 0;
        for (int v : values) {
            sum += v;
        }
        return sum;
    }

    public static void main(String[] args) {
        Scanner in = new Scanner(System.in);
        int n = in.nextInt();
        int[] values = new int[n];
        for (int i = 0; i < n; i++) {
            values[i] = in.nextInt();
        }
        System.out.println(largest(values) + " " + total(values));
    }
}
