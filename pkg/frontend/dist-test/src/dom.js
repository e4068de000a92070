// Tiny DOM builders; no framework.
export function el(tag, attrs = {}, ...children) {
    const node = document.createElement(tag);
    for (const [key, value] of Object.entries(attrs)) {
        if (key === "class")
            node.className = value;
        else
            node.setAttribute(key, value);
    }
    node.append(...children);
    return node;
}
export function clear(node) {
    while (node.firstChild)
        node.removeChild(node.firstChild);
}
export function scrollToAnchor(anchor) {
    const target = document.getElementById(anchor);
    if (!target)
        return;
    target.scrollIntoView({ behavior: "smooth", block: "start" });
    target.classList.add("flash");
    window.setTimeout(() => target.classList.remove("flash"), 1600);
}
