// generated by dbsplit.corpus.fuzz (seed 8)

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
    print("p1", (p + o.link.v));
    o.link = o.link;
    return o.link.v;
}

fn h1(o, p) {
    p -= ((5 + -1) + o.a);
    var o2 = new C0();
    o2.xs = new int[3];
    o2.link = new C1();
    o2.link.v = p;
    o2.a = (o.link.v / 5);
    var rows3 = query("get T", (12) % 5 + 1);
    var q4 = len(rows3);
    for (var row5 : rows3) {
        q4 += row5[2];
    }
    var arr6 = new int[3];
    arr6[0] = o2.link.v;
    return ((p + len(arr6)) * (arr6[2] * len(arr6)));
}

entry fn main(x, y) {
    var o7 = new C0();
    o7.xs = new int[3];
    o7.link = new C1();
    o7.link.v = (x - y);
    o7.a = (x + x);
    var i8 = 0;
    while (i8 < 3) {
        if ((y > (i8 + o7.a)) && (x < 4)) {
            var v9 = i8;
        } else {
            var f10 = ((o7.a + o7.link.v) * 1.25);
        }
        i8++;
    }
    var f11 = o7.b;
    print("f", f11);
    return o7.link.v;
}
