package corpus;

interface Shape {
    double area();
}

class Circle implements Shape {
    private final double r;

    Circle(double r) { this.r = r; }

    @Override
    public double area() { return Math.PI * r * r; }
}

class Rect implements Shape {
    private final double w;
    private final double h;

    Rect(double w, double h) {
        this.w = w;
        this.h = h;
    }

    @Override
    public double area() { return w * h; }
}
