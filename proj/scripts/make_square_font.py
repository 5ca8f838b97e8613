"""Builds the square-glyph test font used by the geometry fixtures.

Every printable ASCII glyph except space is a filled 1em x 1em square; the
space advances 1em with no outline. Ascent 0.8em, descent 0.2em, no line gap,
so a text run at font-size S occupies exactly S px per character and S px tall.
"""
import sys
from fontTools.fontBuilder import FontBuilder
from fontTools.pens.ttGlyphPen import TTGlyphPen

UPM = 1000


def square():
    pen = TTGlyphPen(None)
    pen.moveTo((0, -200))
    pen.lineTo((0, 800))
    pen.lineTo((1000, 800))
    pen.lineTo((1000, -200))
    pen.closePath()
    return pen.glyph()


def empty():
    return TTGlyphPen(None).glyph()


def main(out):
    chars = [chr(c) for c in range(0x20, 0x7F)]
    names = [".notdef"] + ["g%02x" % ord(c) for c in chars]
    fb = FontBuilder(UPM, isTTF=True)
    fb.setupGlyphOrder(names)
    fb.setupCharacterMap({ord(c): "g%02x" % ord(c) for c in chars})
    glyphs = {".notdef": square()}
    for c in chars:
        glyphs["g%02x" % ord(c)] = empty() if c == " " else square()
    fb.setupGlyf(glyphs)
    fb.setupHorizontalMetrics({n: (UPM, 0) for n in names})
    fb.setupHorizontalHeader(ascent=800, descent=-200, lineGap=0)
    fb.setupNameTable({"familyName": "SFSquare", "styleName": "Regular"})
    fb.setupOS2(version=4, sTypoAscender=800, sTypoDescender=-200, sTypoLineGap=0,
                usWinAscent=800, usWinDescent=200, fsSelection=0x80)
    fb.setupPost()
    fb.save(out)


if __name__ == "__main__":
    main(sys.argv[1])
