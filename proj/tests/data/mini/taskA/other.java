import java.io.BufferedReader;
import java.io.InputStreamReader;
import java.util.Arrays;

public class Main {
    public static void main(String[] args) throws Exception {
        BufferedReader br = new BufferedReader(new InputStreamReader(System.in));
        br.readLine();
        int[] a = Arrays.stream(br.readLine().trim().split("\\s+")).mapToInt(Integer::parseInt).toArray();
        int mx = Arrays.stream(a).max().getAsInt();
        long s = Arrays.stream(a).asLongStream().sum();
        System.out.printf("%d %d%n", mx, s);
    }
}
