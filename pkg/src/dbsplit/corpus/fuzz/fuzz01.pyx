// generated by dbsplit.corpus.fuzz (seed 1)

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
    o.b = ((p + o.a) * 1.25);
    return ((p * p) + o.link.v);
}

fn h1(o, p) {
    var o1 = new C0();
    o1.xs = new int[3];
    o1.link = new C1();
    o1.link.v = o.a;
    o1.a = (o.a + p);
    var o2 = new C0();
    o2.xs = new int[3];
    o2.link = new C1();
    o2.link.v = o1.a;
    o2.a = (o.link.v + p);
    var v3 = ((o2.link.v + p) / 3);
    var i4 = 0;
    while (i4 < 4) {
        o2.link = o.link;
        var arr5 = new int[3];
        arr5[1] = (o2.link.v * p);
        o2.xs = arr5;
        print("p6", (len(arr5) % 3));
        i4++;
    }
    return ((o2.link.v * o1.link.v) + (o.link.v - 3));
}

fn h2(o, p) {
    print("p7", p);
    o.xs[2] = (o.link.v / 5);
    var rows8 = query("find T g", 12 % 3);
    var q9 = len(rows8);
    for (var row10 : rows8) {
        q9 += row10[2];
    }
    exec("add T v", 5, o.link.v);
    o.xs[1] = o.link.v;
    return ((p / 7) + o.link.v);
}

entry fn main(x, y) {
    var o11 = new C0();
    o11.xs = new int[3];
    o11.link = new C1();
    o11.link.v = x;
    o11.a = 11;
    if (2 > x) {
        if ((o11.a * o11.a) < o11.a) {
            o11.a = ((x + o11.a) + y);
        }
    }
    o11.xs[0] = (o11.link.v + (6 + x));
    x -= ((o11.link.v + x) * (o11.link.v + o11.link.v));
    o11.a += o11.link.v;
    o11.xs = o11.xs;
    var rows12 = query("get T", ((o11.link.v * x)) % 5 + 1);
    var q13 = len(rows12);
    for (var row14 : rows12) {
        q13 += row14[2];
    }
    return q13;
}
