// generated by dbsplit.corpus.fuzz (seed 14)

class C0 {
    int a;
    float b;
    array xs;
    C1 link;
}

class C1 {
    int v;
}

fn h0(o, p) {
    print("p1", p);
    var arr2 = new int[2];
    arr2[0] = (o.a * o.a);
    o.xs = arr2;
    var i3 = 0;
    while (i3 < 3) {
        if (o.link.v <= 0) {
            return p;
        }
        var o4 = new C0();
        o4.xs = new int[2];
        o4.link = new C1();
        o4.link.v = o.a;
        o4.a = (8 / 2);
        i3++;
    }
    print("p5", (o.link.v + p));
    o.xs = o.xs;
    return len(arr2);
}

fn q1(g) {
    var rows = query("find T g", g % 3);
    var acc = 0;
    for (var row : rows) {
        acc = acc + row[2] * row[0];
    }
    acc = (g % 5);
    return acc;
}

fn h2(o, p) {
    var i6 = 0;
    while (i6 < 1) {
        o.xs[i6 % 2] = i6;
        var arr7 = new int[2];
        arr7[i6 % 2] = o.a;
        o.xs = arr7;
        i6++;
    }
    o.xs[1] = p;
    var o8 = new C0();
    o8.xs = new int[2];
    o8.link = new C1();
    o8.link.v = (9 * -2);
    o8.a = -3;
    var i9 = 0;
    while (i9 < 3) {
        if (((-2 * p) < o8.link.v) && (o8.link.v < 4)) {
            return (2 * o.link.v);
        }
        o8.a += ((4 % 6) * (p + p));
        var f10 = 0.25;
        i9++;
    }
    return p;
}

entry fn main(x, y) {
    var o11 = new C0();
    o11.xs = new int[2];
    o11.link = new C1();
    o11.link.v = y;
    o11.a = 5;
    exec("add T v", 4, x);
    o11.b = 3.0;
    var v12 = (8 + o11.link.v);
    exec("append Log", 2);
    return x;
}
