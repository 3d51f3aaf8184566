"""
Loads ``.chol`` problem text from a URL, a file or a string.
"""

import codecs
import logging

import urllib3

logger = logging.getLogger(__name__)

URL_PREFIXES = ("http://", "https://")


def _charset(content_type):
    """
    Charset parameter of a Content-Type header, or None.
    """
    if not content_type:
        return None
    for param in content_type.split(";")[1:]:
        key, _, value = param.partition("=")
        if key.strip().lower() == "charset" and value.strip():
            return value.strip().strip('"')
    return None


class ProblemDownload:
    """
    Fetches problem sources and turns them into text the parser reads.
    """

    def __init__(self, http=None):
        if http is None:
            http = urllib3.PoolManager()

        self.http = http

    def data_from_source(self, source):
        """
        Problem text from a path or an ``http(s)://`` URL.
        """
        if source.startswith(URL_PREFIXES):
            return self.data_from_url(source)
        return self.data_from_file(source)

    def data_from_url(self, url):
        """
        Download problem text from URL.

        :param url: URL to download
        :return: decoded problem text
        :raises ConnectionError: when the server cannot be reached, answers
            with an error status or sends nothing
        """
        logger.debug("fetching %s", url)
        try:
            response = self.http.request("GET", url)
        except urllib3.exceptions.HTTPError as e:
            raise ConnectionError("Could not get data from %s: %s" % (url, e))

        if response.status >= 400:
            raise ConnectionError("Could not get data from %s: status %d" % (url, response.status))
        if not response.data:
            raise ConnectionError("Could not get data from %s!" % url)

        encoding = _charset(response.headers.get("content-type")) or "utf-8"
        return self.decode(response.data, encoding)

    def data_from_file(self, file):
        """
        Read problem text from file.

        :param file: path of the file
        :return: decoded problem text
        """
        with open(file, mode="rb") as f:
            content = f.read()

        if not content:
            raise IOError("File %s is not readable or is empty!" % file)

        return self.decode(content)

    def data_from_string(self, string_content):
        if not string_content:
            raise IOError("String content is not readable or is empty!")

        if isinstance(string_content, str):
            return string_content.lstrip("\ufeff").replace("\r", "")
        return self.decode(string_content)

    @staticmethod
    def decode(content, encoding="utf-8"):
        """
        Decode problem bytes, dropping a byte order mark and carriage returns.

        An unknown charset falls back to UTF-8.

        :param content: bytes to decode
        :param encoding: charset of the content
        :return: decoded content
        """
        try:
            codecs.lookup(encoding)
        except LookupError:
            logger.warning("unknown charset %s, reading as utf-8", encoding)
            encoding = "utf-8"
        text = content.decode(encoding)
        return text.lstrip("\ufeff").replace("\r", "")
