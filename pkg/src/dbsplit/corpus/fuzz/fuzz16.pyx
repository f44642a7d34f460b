// generated by dbsplit.corpus.fuzz (seed 16)

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
    print("p1", o.a);
    print("p2", (p + p));
    var arr3 = new int[4];
    arr3[2] = p;
    o.xs = arr3;
    p += (len(arr3) * o.a);
    return ((-3 * o.link.v) * p);
}

fn q1(g) {
    var rows = query("find T g", g % 3);
    var acc = 0;
    for (var row : rows) {
        acc = acc + row[2] * row[0];
    }
    var arr4 = new int[4];
    arr4[0] = g;
    var i5 = 0;
    while (i5 < 4) {
        var arr6 = new int[4];
        arr6[0] = (12 % 6);
        i5++;
    }
    return g;
}

entry fn main(x, y) {
    var o7 = new C0();
    o7.xs = new int[4];
    o7.link = new C1();
    o7.link.v = (-2 * y);
    o7.a = (x + 7);
    var f8 = (o7.b - o7.b);
    var v9 = ((x / 2) - (o7.link.v - 0));
    print("f", f8);
    return o7.a;
}
