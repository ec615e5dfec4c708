package corpus

import "time"

func Retry(attempts int, delay time.Duration, fn func() error) (err error) {
	for i := 0; ; i++ {
		err = fn()
		if err == nil {
			return nil
		}
		if i >= attempts-1 {
			break
		}
		time.Sleep(delay)
		delay *= 2
	}
	return err
}
