// generated by dbsplit.corpus.fuzz (seed 19)

class C0 {
    int a;
    float b;
    array xs;
    C1 link;
}

class C1 {
    int v;
}

fn q0(g) {
    var rows = query("find T g", g % 3);
    var acc = 0;
    for (var row : rows) {
        acc = acc + row[2] * row[0];
    }
    var o1 = new C0();
    o1.xs = new int[2];
    o1.link = new C1();
    o1.link.v = acc;
    o1.a = (g % 3);
    return g;
}

fn h1(o, p) {
    var v2 = 3;
    var v3 = 0;
    o.xs = o.xs;
    return o.a;
}

fn h2(o, p) {
    var i4 = 0;
    while (i4 < 2) {
        o.xs = o.xs;
        o.link = o.link;
        o.xs[i4 % 2] = o.a;
        i4++;
    }
    var i5 = 0;
    while (i5 < 1) {
        o.xs[i5 % 2] = (o.a - (p / 4));
        o.b = o.b;
        o.b = (0.25 * (11 * 2.0));
        i5++;
    }
    p = p;
    return o.a;
}

entry fn main(x, y) {
    var o6 = new C0();
    o6.xs = new int[2];
    o6.link = new C1();
    o6.link.v = x;
    o6.a = x;
    var rows7 = query("find T g", 8 % 3);
    var q8 = len(rows7);
    for (var row9 : rows7) {
        q8 += row9[2];
    }
    o6.link = o6.link;
    if ((3 - q8) == (q8 - q8)) {
        var i10 = 0;
        while (i10 < 3) {
            var o11 = new C0();
            o11.xs = new int[2];
            o11.link = new C1();
            o11.link.v = (4 + x);
            o11.a = (o6.link.v + i10);
            exec("add T v", 3, i10);
            var r12 = h1(o6, (o11.link.v / 4));
            i10++;
        }
        var v13 = o6.a;
        var r14 = h2(o6, q8);
    } else {
        var rows15 = query("get T", (o6.a) % 5 + 1);
        var q16 = len(rows15);
        for (var row17 : rows15) {
            q16 += row17[2];
        }
    }
    var f18 = (-2.5 * (3.0 * o6.b));
    print("f", f18);
    return y;
}
