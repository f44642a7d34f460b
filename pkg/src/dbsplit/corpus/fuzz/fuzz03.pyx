// generated by dbsplit.corpus.fuzz (seed 3)

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
    var i1 = 0;
    while (i1 < 4) {
        var i2 = 0;
        while (i2 < 1) {
            var v3 = (o.a % 4);
            var rows4 = query("find T g", i2 % 3);
            var q5 = len(rows4);
            for (var row6 : rows4) {
                q5 += row6[2];
            }
            exec("add T v", 1, o.link.v);
            i2++;
        }
        o.link.v = o.link.v;
        var arr7 = new int[3];
        arr7[1] = o.link.v;
        i1++;
    }
    var f8 = ((p * 0.5) * ((o.a * o.link.v) * 2.0));
    var i9 = 0;
    while (i9 < 2) {
        var o10 = new C0();
        o10.xs = new int[3];
        o10.link = new C1();
        o10.link.v = (p + p);
        o10.a = (o.link.v - p);
        p = 10;
        i9++;
    }
    return (o.a + o.link.v);
}

fn h1(o, p) {
    o.b = (3.0 + o.b);
    o.link = o.link;
    var v11 = p;
    exec("add T v", 4, (o.link.v + o.link.v));
    o.link = o.link;
    return v11;
}

fn q2(g) {
    var rows = query("find T g", g % 3);
    var acc = 0;
    for (var row : rows) {
        acc = acc + row[2] * row[0];
    }
    exec("add T v", 4, (-2 / 6));
    if ((acc != (g / 5)) && (acc < 7)) {
        return acc;
    }
    return 7;
}

entry fn main(x, y) {
    var o12 = new C0();
    o12.xs = new int[3];
    o12.link = new C1();
    o12.link.v = (y % 7);
    o12.a = 1;
    o12.xs[0] = o12.a;
    print("p13", (y * x));
    var o14 = new C0();
    o14.xs = new int[3];
    o14.link = new C1();
    o14.link.v = (o12.link.v - x);
    o14.a = (o12.link.v + x);
    var o15 = new C0();
    o15.xs = new int[3];
    o15.link = new C1();
    o15.link.v = (8 / 5);
    o15.a = y;
    var r16 = h1(o15, o15.a);
    exec("add T v", 4, 12);
    return ((o15.link.v + x) % 6);
}
