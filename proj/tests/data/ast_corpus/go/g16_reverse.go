package corpus

import "unicode/utf8"

func Reverse(s string) string {
	buf := make([]rune, 0, utf8.RuneCountInString(s))
	for _, r := range s {
		buf = append(buf, r)
	}
	for i, j := 0, len(buf)-1; i < j; i, j = i+1, j-1 {
		buf[i], buf[j] = buf[j], buf[i]
	}
	return string(buf)
}

func IsPalindrome(s string) bool {
	return s == Reverse(s)
}
