import java.util.Scanner;

public class Main {
    static int findMax(int[] arr) {
        int m = arr[0];
        for (int k = 1; k < arr.length; k++) {
            if (arr[k] > m) {
                m = arr[k];
            }
        }
        return m;
    }

    static long addAll(int[] arr) {
        long acc = 0;
        for (int x : arr) {
            acc += x;
        }
        return acc;
    }

    public static void main(String[] args) {
        Scanner sc = new Scanner(System.in);
        int count = sc.nextInt();
        int[] arr = new int[count];
        for (int k = 0; k < count; k++) {
            arr[k] = sc.nextInt();
        }
        System.out.println(findMax(arr) + " " + addAll(arr));
    }
}
