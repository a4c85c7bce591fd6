public class SpawnPoint {
    int gridX;
    int gridY;

    public int distanceTo(int x, int y) {
        int dx = x - gridX;
        int dy = y - gridY;
        if (dx < 0) {
            dx = -dx;
        }
        if (dy < 0) {
            dy = -dy;
        }
        return dx + dy;
    }

    public boolean contested(int enemyX, int enemyY) {
        return distanceTo(enemyX, enemyY) < 3;
    }

    public void shift(int dx, int dy) {
        gridX = gridX + dx;
        gridY = gridY + dy;
    }
}
