// generated by dbsplit.corpus.fuzz (seed 17)

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
    var f1 = (o.b + -2.5);
    o.xs = o.xs;
    var o2 = new C0();
    o2.xs = new int[5];
    o2.link = new C1();
    o2.link.v = (p + p);
    o2.a = o.link.v;
    return -1;
}

fn q1(g) {
    var rows = query("find T g", g % 3);
    var acc = 0;
    for (var row : rows) {
        acc = acc + row[2] * row[0];
    }
    var rows3 = query("find T g", (10 % 7) % 3);
    var q4 = len(rows3);
    for (var row5 : rows3) {
        q4 += row5[2];
    }
    return (q4 * acc);
}

entry fn main(x, y) {
    var o6 = new C0();
    o6.xs = new int[5];
    o6.link = new C1();
    o6.link.v = y;
    o6.a = (x + 3);
    var arr7 = new int[5];
    arr7[0] = x;
    var r8 = h0(o6, (x * x));
    arr7[0] = x;
    var rows9 = query("find T g", (arr7[2] + x) % 3);
    var q10 = len(rows9);
    for (var row11 : rows9) {
        q10 += row11[2];
    }
    exec("add T v", 5, (o6.a - arr7[1]));
    o6.xs = o6.xs;
    o6.xs = o6.xs;
    return (o6.a * (len(arr7) * arr7[3]));
}
