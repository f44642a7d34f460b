// generated by dbsplit.corpus.fuzz (seed 18)

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
    var f2 = (p * 1.25);
    p += p;
    return ((p + p) - o.a);
}

entry fn main(x, y) {
    var o3 = new C0();
    o3.xs = new int[3];
    o3.link = new C1();
    o3.link.v = (y + y);
    o3.a = (y % 5);
    var i4 = 0;
    while (i4 < 4) {
        o3.b = (o3.b * (o3.b * ((i4 / 3) * 2.0)));
        var o5 = new C0();
        o5.xs = new int[3];
        o5.link = new C1();
        o5.link.v = (o3.link.v / 1);
        o5.a = (y + 4);
        var f6 = (o5.b * ((o3.link.v % 2) * 2.0));
        i4++;
    }
    var r7 = h0(o3, o3.a);
    return o3.a;
}
