// generated by dbsplit.corpus.fuzz (seed 2)

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
    if ((g * g) != (acc + acc)) {
        return g;
    }
    return ((acc * g) * (-3 - 7));
}

entry fn main(x, y) {
    var o1 = new C0();
    o1.xs = new int[2];
    o1.link = new C1();
    o1.link.v = y;
    o1.a = (x / 4);
    var arr2 = new int[2];
    arr2[1] = o1.a;
    var o3 = new C0();
    o3.xs = new int[2];
    o3.link = new C1();
    o3.link.v = (arr2[1] + y);
    o3.a = (arr2[1] * y);
    exec("append Log", (len(arr2) / 5));
    arr2[1] = len(arr2);
    o3.xs = o3.xs;
    var f4 = ((arr2[0] - o1.link.v) * 1.25);
    print("p5", (len(arr2) - x));
    print("f", f4);
    return arr2[0];
}
