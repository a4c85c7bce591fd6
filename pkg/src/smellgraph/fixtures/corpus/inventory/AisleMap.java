public class AisleMap {
    int rows;
    int columns;

    public int cellCount() {
        return rows * columns;
    }

    public boolean contains(int row, int col) {
        if (row < 0 || col < 0) {
            return false;
        }
        return row < rows && col < columns;
    }

    public int walkDistance(int fromRow, int fromCol, int toRow, int toCol) {
        int dr = toRow - fromRow;
        if (dr < 0) {
            dr = -dr;
        }
        int dc = toCol - fromCol;
        if (dc < 0) {
            dc = -dc;
        }
        return dr + dc;
    }
}
