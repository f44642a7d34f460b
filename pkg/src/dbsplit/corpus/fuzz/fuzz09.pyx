// generated by dbsplit.corpus.fuzz (seed 9)

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
    var f1 = (o.b - (o.b * o.b));
    var arr2 = new int[5];
    arr2[3] = o.a;
    o.xs = arr2;
    return p;
}

fn h1(o, p) {
    var rows3 = query("find T g", p % 3);
    var q4 = len(rows3);
    for (var row5 : rows3) {
        q4 += row5[2];
    }
    var o6 = new C0();
    o6.xs = new int[5];
    o6.link = new C1();
    o6.link.v = o.a;
    o6.a = (o.a - p);
    print("p7", (o.a + o6.a));
    var f8 = 1.5;
    return ((3 + q4) + 1);
}

fn h2(o, p) {
    if (o.a == p) {
        var f9 = (o.b * o.b);
    }
    return (o.a + o.link.v);
}

entry fn main(x, y) {
    var o10 = new C0();
    o10.xs = new int[5];
    o10.link = new C1();
    o10.link.v = (x / 7);
    o10.a = y;
    o10.xs = o10.xs;
    y = x;
    var r11 = h1(o10, (x * o10.link.v));
    r11 *= ((10 % 6) / 2);
    var rows12 = query("find T g", (x % 6) % 3);
    var q13 = len(rows12);
    for (var row14 : rows12) {
        q13 += row14[2];
    }
    return x;
}
