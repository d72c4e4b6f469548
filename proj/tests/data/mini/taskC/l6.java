import java.util.Scanner;

public class Main {
    static long fib(int n) {
        if (n < 2) {
            return n;
        }
        long[] memo = new long[n + 1];
        memo[1] = 1;
        int i = 2;
        while (i <= n) {
            memo[i] = memo[i - 1] + memo[i - 2];
            i++;
        }
        return memo[n];
    }

    public static void main(String[] args) {
        Scanner in = new Scanner(System.in);
        System.out.println(fib(in.nextInt()));
    }
}
