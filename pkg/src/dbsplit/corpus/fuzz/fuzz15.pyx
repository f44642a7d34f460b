// generated by dbsplit.corpus.fuzz (seed 15)

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
    var f1 = (0.25 * (3.0 - ((o.a * p) * 0.5)));
    return (o.link.v * o.a);
}

entry fn main(x, y) {
    var o2 = new C0();
    o2.xs = new int[3];
    o2.link = new C1();
    o2.link.v = (y + y);
    o2.a = (y / 7);
    var r3 = h0(o2, x);
    var r4 = h0(o2, (-1 + o2.a));
    var rows5 = query("find T g", o2.link.v % 3);
    var q6 = len(rows5);
    for (var row7 : rows5) {
        q6 += row7[2];
    }
    var f8 = (3.0 * (o2.a * 1.25));
    print("f", f8);
    return ((o2.a + x) + 11);
}
