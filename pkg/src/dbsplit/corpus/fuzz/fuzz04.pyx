// generated by dbsplit.corpus.fuzz (seed 4)

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
    var arr1 = new int[3];
    arr1[0] = 9;
    var o2 = new C0();
    o2.xs = new int[3];
    o2.link = new C1();
    o2.link.v = (acc + g);
    o2.a = (g * acc);
    return acc;
}

fn h1(o, p) {
    var v3 = o.a;
    var f4 = (-2.5 * ((v3 * 2.0) - o.b));
    o.link = o.link;
    return -1;
}

entry fn main(x, y) {
    var o5 = new C0();
    o5.xs = new int[3];
    o5.link = new C1();
    o5.link.v = y;
    o5.a = (y / 2);
    var f6 = ((o5.a / 2) * 1.25);
    var o7 = new C0();
    o7.xs = new int[3];
    o7.link = new C1();
    o7.link.v = (x - 4);
    o7.a = o5.link.v;
    var o8 = new C0();
    o8.xs = new int[3];
    o8.link = new C1();
    o8.link.v = (o5.a * 8);
    o8.a = (x * y);
    print("f", f6);
    return (o8.link.v / 7);
}
