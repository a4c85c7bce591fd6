public class Novel extends Product {
    String author;
    int pageCount;

    public String describe() {
        return author + ": " + pageCount;
    }

    public boolean isLong() {
        return pageCount > 400;
    }

    public String formatLabel(String prefix) {
        return prefix + " / " + getTitle();
    }
}
