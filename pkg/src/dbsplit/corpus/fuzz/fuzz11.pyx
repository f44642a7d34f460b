// generated by dbsplit.corpus.fuzz (seed 11)

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
    o.xs[1] = ((11 - p) + 9);
    o.xs[4] = o.link.v;
    p = (p * (-1 + o.a));
    o.link = o.link;
    return p;
}

fn q1(g) {
    var rows = query("find T g", g % 3);
    var acc = 0;
    for (var row : rows) {
        acc = acc + row[2] * row[0];
    }
    var o1 = new C0();
    o1.xs = new int[5];
    o1.link = new C1();
    o1.link.v = acc;
    o1.a = -3;
    return 12;
}

fn h2(o, p) {
    o.xs = o.xs;
    o.a += o.a;
    var f2 = (0.25 - (o.link.v * 1.25));
    var arr3 = new int[5];
    arr3[1] = o.a;
    o.xs = arr3;
    return len(arr3);
}

entry fn main(x, y) {
    var o4 = new C0();
    o4.xs = new int[5];
    o4.link = new C1();
    o4.link.v = (2 + x);
    o4.a = 3;
    if (o4.link.v > -1) {
        o4.xs[4] = o4.link.v;
        o4.link.v = o4.a;
        o4.link.v = ((o4.link.v - o4.a) - (0 + -2));
    }
    if ((o4.a == (o4.a % 5)) && (x < 7)) {
        var f5 = ((x * 0.5) - (0.25 - ((8 - y) * 1.25)));
        o4.link.v = ((-1 + o4.a) * (x * 11));
        var arr6 = new int[5];
        arr6[0] = (y / 3);
        o4.xs = arr6;
    }
    exec("append Log", o4.a);
    var rows7 = query("get T", (-1) % 5 + 1);
    var q8 = len(rows7);
    for (var row9 : rows7) {
        q8 += row9[2];
    }
    print("p10", (y + o4.link.v));
    return o4.link.v;
}
