// In-page annotation extractor, payload schema "extractor: 1".
// Reads elements marked by the template engine (data-sf-*) and reports
// page-coordinate rects plus a visibility verdict for each.
(function () {
  "use strict";

  var LINE_OVERLAP = 0.5;
  var GRID = 3;

  function pageRect(r) {
    return { x: r.left + window.scrollX, y: r.top + window.scrollY, w: r.width, h: r.height };
  }

  function union(a, b) {
    var x0 = Math.min(a.x, b.x), y0 = Math.min(a.y, b.y);
    var x1 = Math.max(a.x + a.w, b.x + b.w), y1 = Math.max(a.y + a.h, b.y + b.h);
    return { x: x0, y: y0, w: x1 - x0, h: y1 - y0 };
  }

  function verticalOverlap(a, b) {
    return Math.min(a.y + a.h, b.y + b.h) - Math.max(a.y, b.y);
  }

  // Groups fragment rects into lines: a rect joins a line when their vertical
  // overlap is at least half the smaller height.
  function lineBoxes(rects) {
    var sorted = rects.filter(function (r) { return r.w > 0 && r.h > 0; }).slice();
    sorted.sort(function (a, b) { return a.y - b.y || a.x - b.x; });
    var lines = [];
    sorted.forEach(function (r) {
      for (var i = 0; i < lines.length; i++) {
        var l = lines[i];
        if (verticalOverlap(l, r) >= LINE_OVERLAP * Math.min(l.h, r.h)) {
          lines[i] = union(l, r);
          return;
        }
      }
      lines.push(r);
    });
    lines.sort(function (a, b) { return a.y - b.y || a.x - b.x; });
    return lines;
  }

  function textRange(el, start, end) {
    var walker = document.createTreeWalker(el, NodeFilter.SHOW_TEXT);
    var range = document.createRange();
    var seen = 0, node, started = false;
    while ((node = walker.nextNode())) {
      var len = node.data.length;
      if (!started && start <= seen + len) {
        range.setStart(node, start - seen);
        started = true;
      }
      if (started && end <= seen + len) {
        range.setEnd(node, end - seen);
        return range;
      }
      seen += len;
    }
    throw new Error("offsets " + start + ".." + end + " exceed text length " + seen);
  }

  function textRects(el) {
    var start = el.getAttribute("data-sf-start"), end = el.getAttribute("data-sf-end");
    var range;
    if (start === null || end === null) {
      range = document.createRange();
      range.selectNodeContents(el);
    } else {
      range = textRange(el, parseInt(start, 10), parseInt(end, 10));
    }
    var out = [];
    var list = range.getClientRects();
    for (var i = 0; i < list.length; i++) out.push(pageRect(list[i]));
    return lineBoxes(out);
  }

  function contentBox(el) {
    var r = el.getBoundingClientRect();
    var cs = getComputedStyle(el);
    var px = function (v) { return parseFloat(v) || 0; };
    var left = px(cs.borderLeftWidth) + px(cs.paddingLeft);
    var top = px(cs.borderTopWidth) + px(cs.paddingTop);
    var right = px(cs.borderRightWidth) + px(cs.paddingRight);
    var bottom = px(cs.borderBottomWidth) + px(cs.paddingBottom);
    return pageRect({
      left: r.left + left, top: r.top + top,
      width: Math.max(0, r.width - left - right), height: Math.max(0, r.height - top - bottom)
    });
  }

  function rendered(el) {
    if (!el.isConnected || el.getClientRects().length === 0) return false;
    var cs = getComputedStyle(el);
    return cs.visibility !== "hidden" && cs.visibility !== "collapse" && parseFloat(cs.opacity) !== 0;
  }

  // Hit-tests a GRID x GRID lattice of cell centres over each rect. Returns
  // the hit cells' bounding box, or null when nothing was hit.
  function sampleHits(el, rects) {
    var total = 0, hits = 0, clip = null;
    rects.forEach(function (r) {
      var cw = r.w / GRID, ch = r.h / GRID;
      for (var i = 0; i < GRID; i++) {
        for (var j = 0; j < GRID; j++) {
          total++;
          var px = r.x + (j + 0.5) * cw - window.scrollX;
          var py = r.y + (i + 0.5) * ch - window.scrollY;
          var top = document.elementFromPoint(px, py);
          if (top && (top === el || el.contains(top))) {
            hits++;
            var cell = { x: r.x + j * cw, y: r.y + i * ch, w: cw, h: ch };
            clip = clip ? union(clip, cell) : cell;
          }
        }
      }
    });
    return { total: total, hits: hits, clip: clip };
  }

  function asArray(r) { return [r.x, r.y, r.w, r.h]; }

  function extractOne(el) {
    var rec = {
      key: el.getAttribute("data-sf-key") || "",
      family: el.getAttribute("data-sf-family") || "",
      label: el.getAttribute("data-sf-label") || "",
      kind: el.getAttribute("data-sf-kind") || "",
      field: el.getAttribute("data-sf-field") || "",
      rects: [],
      visibility: "occluded",
      clip: null
    };
    try {
      if (!rendered(el)) return rec;
      var rects;
      if (rec.kind === "text") rects = textRects(el);
      else if (rec.kind === "image") rects = [contentBox(el)];
      else rects = [pageRect(el.getBoundingClientRect())];
      rects = rects.filter(function (r) { return r.w > 0 && r.h > 0; });
      if (rects.length === 0) return rec;
      var s = sampleHits(el, rects);
      if (s.hits === 0) return rec;
      rec.rects = rects.map(asArray);
      if (s.hits === s.total) {
        rec.visibility = "full";
      } else {
        rec.visibility = "clipped";
        rec.clip = asArray(s.clip);
      }
    } catch (e) {
      rec.rects = [];
      rec.visibility = "occluded";
      rec.error = String(e && e.message ? e.message : e);
    }
    return rec;
  }

  // What each form control shows after load, for the fill readback.
  function fieldValues() {
    var out = {};
    var controls = document.querySelectorAll("[data-field]");
    for (var i = 0; i < controls.length; i++) {
      var el = controls[i], v;
      var type = (el.getAttribute("type") || "").toLowerCase();
      if (el.tagName === "SELECT") {
        var opt = el.selectedIndex >= 0 ? el.options[el.selectedIndex] : null;
        v = opt && opt.hasAttribute("selected") ? opt.value : "";
      } else if (type === "checkbox" || type === "radio") {
        v = el.checked ? "checked" : "";
      } else {
        v = el.value;
      }
      out[el.getAttribute("data-field")] = v;
    }
    return out;
  }

  window.__screenforgeExtract = function () {
    var de = document.documentElement, body = document.body;
    var width = Math.max(de.scrollWidth, body ? body.scrollWidth : 0);
    var height = Math.max(de.scrollHeight, body ? body.scrollHeight : 0);
    var nodes = document.querySelectorAll("[data-sf-key]");
    var records = [];
    for (var i = 0; i < nodes.length; i++) records.push(extractOne(nodes[i]));
    return JSON.stringify({ extractor: 1, doc: { width: width, height: height }, records: records, fields: fieldValues() });
  };
})();
