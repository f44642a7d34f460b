// generated by dbsplit.corpus.fuzz (seed 0)

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
    var arr1 = new int[5];
    arr1[3] = (acc * g);
    var o2 = new C0();
    o2.xs = new int[5];
    o2.link = new C1();
    o2.link.v = g;
    o2.a = (len(arr1) * g);
    var f3 = o2.b;
    return o2.a;
}

fn h1(o, p) {
    if ((p % 7) != (o.a + o.link.v)) {
        print("p4", (3 / 5));
        print("p5", p);
    } else {
        if (((6 + o.link.v) < (p % 4)) || (p < 4)) {
            return p;
        }
        var i6 = 0;
        while (i6 < 3) {
            p += ((o.a % 5) + (o.link.v - o.link.v));
            o.xs[2] = o.link.v;
            i6++;
        }
    }
    o.xs[1] = p;
    return ((o.a * 1) * (-1 - 0));
}

entry fn main(x, y) {
    var o7 = new C0();
    o7.xs = new int[5];
    o7.link = new C1();
    o7.link.v = (x % 4);
    o7.a = -2;
    x = ((10 / 5) / 1);
    if ((6 > 11) && (o7.a < 4)) {
        var r8 = q0((2 - y));
        if (o7.a < (o7.link.v + y)) {
            var f9 = o7.b;
            x -= o7.a;
        }
    }
    o7.a += (y + y);
    var rows10 = query("find T g", (9 + o7.link.v) % 3);
    var q11 = len(rows10);
    for (var row12 : rows10) {
        q11 += row12[2];
    }
    x -= ((o7.link.v + 12) + o7.a);
    o7.xs = o7.xs;
    var rows13 = query("find T g", 3 % 3);
    var q14 = len(rows13);
    for (var row15 : rows13) {
        q14 += row15[2];
    }
    var v16 = o7.link.v;
    o7.xs = o7.xs;
    return x;
}
