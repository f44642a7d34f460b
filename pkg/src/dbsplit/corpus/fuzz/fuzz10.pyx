// generated by dbsplit.corpus.fuzz (seed 10)

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
    print("p1", (p + 12));
    return p;
}

fn q1(g) {
    var rows = query("find T g", g % 3);
    var acc = 0;
    for (var row : rows) {
        acc = acc + row[2] * row[0];
    }
    exec("add T v", 4, acc);
    return (g / 4);
}

entry fn main(x, y) {
    var o2 = new C0();
    o2.xs = new int[2];
    o2.link = new C1();
    o2.link.v = (y - -3);
    o2.a = 6;
    var arr3 = new int[2];
    arr3[0] = o2.link.v;
    o2.xs = arr3;
    if ((len(arr3) - o2.a) < x) {
        o2.b = ((0 - o2.a) * 0.5);
    } else {
        var rows4 = query("get T", (o2.link.v) % 5 + 1);
        var q5 = len(rows4);
        for (var row6 : rows4) {
            q5 += row6[2];
        }
        print("p7", x);
    }
    o2.b = (x * 2.0);
    if ((5 - o2.a) != len(arr3)) {
        var r8 = q1((o2.a % 2));
    } else {
        var o9 = new C0();
        o9.xs = new int[2];
        o9.link = new C1();
        o9.link.v = o2.link.v;
        o9.a = (arr3[1] + 10);
        var v10 = -2;
    }
    var i11 = 0;
    while (i11 < 1) {
        print("p12", (y + len(arr3)));
        i11++;
    }
    var rows13 = query("get T", (len(arr3)) % 5 + 1);
    var q14 = len(rows13);
    for (var row15 : rows13) {
        q14 += row15[2];
    }
    var arr16 = new int[2];
    arr16[1] = (q14 % 2);
    o2.xs = arr16;
    o2.xs = o2.xs;
    var s18 = 0;
    for (var e17 : arr16) {
        s18 = s18 + e17 % 11;
    }
    o2.xs[0] = o2.link.v;
    return (o2.a * o2.a);
}
