// generated by dbsplit.corpus.fuzz (seed 7)

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
    var v1 = o.link.v;
    return (o.a - 10);
}

entry fn main(x, y) {
    var o2 = new C0();
    o2.xs = new int[4];
    o2.link = new C1();
    o2.link.v = x;
    o2.a = (x / 5);
    var rows3 = query("get T", (o2.link.v) % 5 + 1);
    var q4 = len(rows3);
    for (var row5 : rows3) {
        q4 += row5[2];
    }
    var i6 = 0;
    while (i6 < 4) {
        print("p7", (x % 5));
        i6++;
    }
    o2.xs = o2.xs;
    var f8 = o2.b;
    var r9 = h0(o2, (y + x));
    var f10 = o2.b;
    var o11 = new C0();
    o11.xs = new int[4];
    o11.link = new C1();
    o11.link.v = (o2.link.v * 10);
    o11.a = y;
    print("f", f10);
    return 7;
}
