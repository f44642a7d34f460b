// generated by dbsplit.corpus.fuzz (seed 5)

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
    var v1 = ((8 - o.a) - 4);
    var v2 = v1;
    var f3 = 1.5;
    o.xs[1] = 3;
    var rows4 = query("get T", ((v1 - v2)) % 5 + 1);
    var q5 = len(rows4);
    for (var row6 : rows4) {
        q5 += row6[2];
    }
    return (q5 / 3);
}

fn q1(g) {
    var rows = query("find T g", g % 3);
    var acc = 0;
    for (var row : rows) {
        acc = acc + row[2] * row[0];
    }
    var f7 = (3.0 - (3.0 - ((12 * g) * 0.5)));
    if ((acc + g) != (g * g)) {
        print("p8", 11, f7);
        if (g != (g * g)) {
            return (7 * g);
        }
        var o9 = new C0();
        o9.xs = new int[4];
        o9.link = new C1();
        o9.link.v = (-1 * g);
        o9.a = (g * g);
    } else {
        if ((8 + acc) == g) {
            return 1;
        }
        var f10 = (f7 - (acc * 0.5));
        var f11 = f10;
    }
    return acc;
}

fn h2(o, p) {
    p *= (p - p);
    var rows12 = query("get T", ((p / 3)) % 5 + 1);
    var q13 = len(rows12);
    for (var row14 : rows12) {
        q13 += row14[2];
    }
    return ((p * o.a) / 3);
}

entry fn main(x, y) {
    var o15 = new C0();
    o15.xs = new int[4];
    o15.link = new C1();
    o15.link.v = (y + y);
    o15.a = (y / 7);
    var r16 = q1((x % 2));
    var arr17 = new int[4];
    arr17[3] = 10;
    o15.xs = arr17;
    var r18 = h2(o15, (x + o15.link.v));
    o15.link.v = arr17[3];
    o15.xs[0] = (r18 + 10);
    return ((o15.link.v + r16) + o15.a);
}
