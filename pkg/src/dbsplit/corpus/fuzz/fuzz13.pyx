// generated by dbsplit.corpus.fuzz (seed 13)

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
    var o1 = new C0();
    o1.xs = new int[4];
    o1.link = new C1();
    o1.link.v = p;
    o1.a = (p - o.link.v);
    var arr2 = new int[4];
    arr2[2] = p;
    return ((len(arr2) * arr2[1]) + (p * o1.a));
}

fn h1(o, p) {
    var o3 = new C0();
    o3.xs = new int[4];
    o3.link = new C1();
    o3.link.v = 8;
    o3.a = (p / 5);
    var i4 = 0;
    while (i4 < 2) {
        var o5 = new C0();
        o5.xs = new int[4];
        o5.link = new C1();
        o5.link.v = (i4 % 2);
        o5.a = i4;
        o3.a += i4;
        i4++;
    }
    if (p > o3.a) {
        o.link = o.link;
        var rows6 = query("find T g", p % 3);
        var q7 = len(rows6);
        for (var row8 : rows6) {
            q7 += row8[2];
        }
        var arr9 = new int[4];
        arr9[3] = (p * p);
    }
    print("p10", (o.link.v - o.link.v));
    return o3.link.v;
}

entry fn main(x, y) {
    var o11 = new C0();
    o11.xs = new int[4];
    o11.link = new C1();
    o11.link.v = 2;
    o11.a = (4 % 2);
    exec("append Log", (11 % 7));
    var f12 = (o11.b - (-2.5 - o11.b));
    var r13 = h1(o11, x);
    var r14 = h1(o11, (9 * o11.link.v));
    print("f", f12);
    return r13;
}
