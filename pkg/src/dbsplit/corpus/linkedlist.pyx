// Build a linked list, walk it twice and record its sum.

class Node {
    int value;
    Node next;
}

fn build(n) {
    var head = null;
    var i = 0;
    while (i < n) {
        var node = new Node();
        node.value = i * 3 % 7;
        node.next = head;
        head = node;
        i++;
    }
    return head;
}

fn total(head) {
    var sum = 0;
    var cur = head;
    while (cur != null) {
        sum += cur.value;
        cur = cur.next;
    }
    return sum;
}

fn count(node) {
    if (node == null) {
        return 0;
    }
    return 1 + count(node.next);
}

entry fn listSum(n) {
    var head = build(n);
    var s = total(head);
    var c = count(head);
    exec("append Stat", s, c);
    print("sum", s, "count", c);
    return s;
}
