"""
Views turn numeric results into SVG documents.
A view builds a list of panels (`Panel`) from some source object,
then renders every panel as a stacked plot in one SVG document.
Output is plain text with fixed number formatting, so the same data always gives the same bytes.
"""

import abc
import dataclasses
import math
import xml.sax.saxutils

import numpy

PANEL_WIDTH = 640
PANEL_HEIGHT = 320
MARGIN = 48
TITLE_HEIGHT = 24
TICKS = 5

COLORS = ['#1f77b4', '#d62728', '#2ca02c', '#9467bd', '#ff7f0e', '#8c564b']

STYLE_LINE = 'line'
STYLE_POINTS = 'points'

@dataclasses.dataclass
class Series(object):
    label: str
    xs: numpy.ndarray
    ys: numpy.ndarray
    style: str = STYLE_LINE

    def finitePoints(self, logX = False):
        """
        The plottable (x, y) points; with `logX` the abscissae are log x and x must be positive.
        """

        xs = numpy.asarray(self.xs, dtype = float)
        ys = numpy.asarray(self.ys, dtype = float)
        keep = numpy.isfinite(xs) & numpy.isfinite(ys)

        if (logX):
            keep &= (xs > 0)
            return numpy.log(xs[keep]), ys[keep]

        return xs[keep], ys[keep]

@dataclasses.dataclass
class Panel(object):
    title: str
    series: list = dataclasses.field(default_factory = list)
    xLabel: str = 'x'
    yLabel: str = 'y'
    logX: bool = False

    def add(self, label, xs, ys, style = STYLE_LINE):
        self.series.append(Series(label, xs, ys, style))

class AbstractView(abc.ABC):
    """
    A view that knows how to present one kind of result.
    """

    def __init__(self, title = None, width = PANEL_WIDTH, panelHeight = PANEL_HEIGHT):
        self._title = title
        self._width = int(width)
        self._panelHeight = int(panelHeight)
        self._panels = []

    def update(self, source):
        """
        Rebuild the panels from a source object.
        """

        self._panels = list(self._createPanels(source))

    def getPanels(self):
        return self._panels

    def render(self):
        """
        The SVG document for the current panels.
        """

        height = len(self._panels) * (self._panelHeight + TITLE_HEIGHT) + TITLE_HEIGHT
        parts = [
            '<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" viewBox="0 0 %d %d">'
                    % (self._width, height, self._width, height),
            '<rect x="0" y="0" width="%d" height="%d" fill="white"/>' % (self._width, height),
        ]

        if (self._title is not None):
            parts.append(_text(self._width / 2, TITLE_HEIGHT * 0.75, self._title, size = 16))

        for index, panel in enumerate(self._panels):
            top = TITLE_HEIGHT + index * (self._panelHeight + TITLE_HEIGHT)
            parts.extend(self._renderPanel(panel, top))

        parts.append('</svg>')
        return '\n'.join(parts) + '\n'

    def save(self, path):
        with open(path, 'w') as file:
            file.write(self.render())

    @abc.abstractmethod
    def _createPanels(self, source):
        """
        Return the panels that present the source.
        """

        pass

    def _renderPanel(self, panel, top):
        left = MARGIN
        right = self._width - MARGIN / 2
        plotTop = top + TITLE_HEIGHT
        bottom = top + self._panelHeight

        parts = [_text((left + right) / 2, top + TITLE_HEIGHT * 0.75, panel.title, size = 13)]

        points = [series.finitePoints(panel.logX) for series in panel.series]
        xs = [x for x, _ in points]
        ys = [y for _, y in points]

        xRange = _range(xs)
        yRange = _range(ys)

        def toScreen(x, y):
            sx = left + (x - xRange[0]) / (xRange[1] - xRange[0]) * (right - left)
            sy = bottom - (y - yRange[0]) / (yRange[1] - yRange[0]) * (bottom - plotTop)
            return sx, sy

        parts.append(('<rect x="%.2f" y="%.2f" width="%.2f" height="%.2f"'
                + ' fill="none" stroke="#888"/>')
                % (left, plotTop, right - left, bottom - plotTop))

        for tick in numpy.linspace(yRange[0], yRange[1], TICKS):
            _, sy = toScreen(xRange[0], tick)
            parts.append(_text(left - 4, sy + 4, '%.3g' % (tick), anchor = 'end'))

        for tick in numpy.linspace(xRange[0], xRange[1], TICKS):
            sx, _ = toScreen(tick, yRange[0])
            label = ('%.3g' % (math.exp(tick))) if panel.logX else ('%.3g' % (tick))
            parts.append(_text(sx, bottom + 14, label))

        parts.append(_text((left + right) / 2, bottom + 28, panel.xLabel))

        for index, (series, x, (_, y)) in enumerate(zip(panel.series, xs, points)):
            color = COLORS[index % len(COLORS)]
            screen = [toScreen(px, py) for px, py in zip(x, y)]

            if (series.style == STYLE_POINTS):
                for sx, sy in screen:
                    parts.append('<circle cx="%.2f" cy="%.2f" r="3" fill="%s"/>' % (sx, sy, color))
            elif (len(screen) > 0):
                coordinates = ' '.join(['%.2f,%.2f' % (sx, sy) for sx, sy in screen])
                parts.append('<polyline points="%s" fill="none" stroke="%s" stroke-width="1.5"/>'
                        % (coordinates, color))

            parts.append(_text(right - 8, plotTop + 14 * (index + 1), series.label,
                    anchor = 'end', color = color))

        return parts

def _range(arrays):
    values = [array for array in arrays if (array.size > 0)]
    if (len(values) == 0):
        return (0.0, 1.0)

    low = float(min([numpy.min(array) for array in values]))
    high = float(max([numpy.max(array) for array in values]))

    if (high - low <= 1e-12 * max(1.0, abs(low))):
        return (low - 1.0, high + 1.0)

    return (low, high)

def _text(x, y, content, size = 10, anchor = 'middle', color = '#222'):
    return '<text x="%.2f" y="%.2f" font-size="%d" text-anchor="%s" fill="%s">%s</text>' \
            % (x, y, size, anchor, color, xml.sax.saxutils.escape(str(content)))
