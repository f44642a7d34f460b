// generated by dbsplit.corpus.fuzz (seed 12)

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
    var f1 = (p * 1.25);
    o.xs[4] = o.link.v;
    o.xs[1] = p;
    return (p - (-2 + o.link.v));
}

fn q1(g) {
    var rows = query("find T g", g % 3);
    var acc = 0;
    for (var row : rows) {
        acc = acc + row[2] * row[0];
    }
    var arr2 = new int[5];
    arr2[0] = (acc - g);
    exec("append Log", (9 % 5));
    return len(arr2);
}

entry fn main(x, y) {
    var o3 = new C0();
    o3.xs = new int[5];
    o3.link = new C1();
    o3.link.v = (x + x);
    o3.a = (y / 3);
    var i4 = 0;
    while (i4 < 1) {
        o3.xs[i4 % 5] = o3.a;
        y = o3.link.v;
        i4++;
    }
    o3.xs[0] = (o3.a + (11 / 3));
    o3.link = o3.link;
    var r5 = h0(o3, (x % 2));
    var v6 = (-2 * 8);
    o3.link.v = ((4 / 7) / 5);
    return ((o3.a * o3.a) + (r5 + o3.link.v));
}
